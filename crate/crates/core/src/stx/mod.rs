//! The line-oriented `.stx` presentation format.
//!
//! ```text
//! ; comment
//! scalar QQ                      ; or: scalar FP 5
//! gen x even invertible xinv
//! gen theta odd
//! delta2
//!   x -> x # x
//!   ...
//! ```
//!
//! Blocks `delta2`, `delta3`, `counit`, `cozero` hold one `<symbol> -> <expr>`
//! line per generator and declared inverse. A homomorphism file holds a single
//! `map` block. Expressions are `±`-separated terms; a term is `#`-separated
//! tensor factors; a factor is `*`-separated atoms; an atom is an integer or
//! fraction, or a symbol with an optional integer exponent `x^-2`.

mod expr;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

pub use expr::parse_expr;

use crate::cotruss::CotrussPresentation;
use crate::error::{Error, Result};
use crate::homs::GenHom;
use crate::superalg::{Field, Generator, GeneratorSet};
use crate::tensor::TensorElement;

const BLOCKS: [(&str, usize); 5] = [("delta2", 2), ("delta3", 3), ("counit", 0), ("cozero", 0), ("map", 1)];

struct Block {
    name: &'static str,
    arity: usize,
    line: usize,
    /// symbol index → (image, line)
    images: BTreeMap<usize, (TensorElement, usize)>,
}

/// Strips the comment and returns the content with its column offset.
fn content(raw: &str) -> &str {
    match raw.find(';') {
        Some(i) => &raw[..i],
        None => raw,
    }
}

fn column_of(raw: &str, token: &str) -> usize {
    raw.find(token).map_or(1, |i| raw[..i].chars().count() + 1)
}

/// Parses mapping lines `<sym> -> <expr>` into blocks.
fn parse_blocks<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    source: &Arc<GeneratorSet>,
    target: &Arc<GeneratorSet>,
    allowed: &[&str],
) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (lineno, raw) in lines {
        let text = content(raw);
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(&(name, arity)) = BLOCKS.iter().find(|(n, _)| *n == trimmed) {
            if !allowed.contains(&name) {
                return Err(Error::parse(
                    lineno,
                    column_of(raw, trimmed),
                    format!("block `{name}` is not allowed here"),
                ));
            }
            if blocks.iter().any(|b| b.name == name) {
                return Err(Error::parse(lineno, column_of(raw, trimmed), format!("duplicate block `{name}`")));
            }
            blocks.push(Block { name, arity, line: lineno, images: BTreeMap::new() });
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(Error::parse(lineno, column_of(raw, trimmed), "expected a block header"));
        };
        let Some(arrow) = text.find("->") else {
            return Err(Error::parse(lineno, column_of(raw, trimmed), "expected `<symbol> -> <expr>`"));
        };
        let lhs = text[..arrow].trim();
        let lhs_col = column_of(raw, lhs);
        let Some(sym) = source.lookup(lhs) else {
            return Err(Error::parse(lineno, lhs_col, format!("unknown generator `{lhs}`")));
        };
        let s = source.symbol_index(sym);
        if block.images.contains_key(&s) {
            return Err(Error::parse(lineno, lhs_col, format!("duplicate image for `{lhs}`")));
        }
        let offset = text[..arrow + 2].chars().count();
        let img = expr::parse_expr_at(target, &text[arrow + 2..], block.arity, lineno, offset)?;
        block.images.insert(s, (img, lineno));
    }
    Ok(blocks)
}

/// Turns a block into a homomorphism, checking completeness and
/// well-definedness; semantic errors point at the offending line.
fn block_to_hom(block: Block, source: &Arc<GeneratorSet>, target: &Arc<GeneratorSet>) -> Result<GenHom> {
    for s in 0..source.symbol_count() {
        if !block.images.contains_key(&s) {
            return Err(Error::parse(
                block.line,
                1,
                format!("block `{}` has no image for `{}`", block.name, source.symbol_name(s)),
            ));
        }
    }
    let lines: Vec<usize> = block.images.values().map(|(_, l)| *l).collect();
    let images = block.images.into_values().map(|(img, _)| img).collect();
    let hom = GenHom::new(source, target, block.arity, images)?;
    hom.check_well_defined().map_err(|e| {
        let name = match &e {
            Error::ParityViolation(n) | Error::GrassmannRelationViolation(n) | Error::InvertibilityViolation(n) => {
                Some(n.clone())
            }
            _ => None,
        };
        let line = name.and_then(|n| source.lookup(&n)).map_or(block.line, |sym| lines[source.symbol_index(sym)]);
        Error::parse(line, 1, format!("{}: {e}", block.name))
    })?;
    Ok(hom)
}

/// Parses a presentation file.
pub fn parse_stx(text: &str) -> Result<CotrussPresentation> {
    let mut field = None;
    let mut gens: Vec<Generator> = Vec::new();
    let mut body_start = None;
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    for (idx, &(lineno, raw)) in lines.iter().enumerate() {
        let words: Vec<&str> = content(raw).split_whitespace().collect();
        let Some(&head) = words.first() else { continue };
        match head {
            "scalar" => {
                if field.is_some() || !gens.is_empty() {
                    return Err(Error::parse(lineno, column_of(raw, head), "`scalar` must come first and only once"));
                }
                let text = words[1..].join(" ");
                field =
                    Some(Field::parse(&text).map_err(|e| Error::parse(lineno, column_of(raw, head), e.to_string()))?);
            }
            "gen" => {
                let gen = match words.as_slice() {
                    [_, name, "odd"] => Generator::odd(name),
                    [_, name, "even"] => Generator::even(name),
                    [_, name, "even", "invertible", inv] => Generator::invertible(name, inv),
                    [_, name, "odd", "invertible", inv] => {
                        Generator { inverse: Some(inv.to_string()), ..Generator::odd(name) }
                    }
                    _ => {
                        return Err(Error::parse(
                            lineno,
                            column_of(raw, head),
                            "expected `gen <name> even [invertible <inv>] | odd`",
                        ))
                    }
                };
                if !is_ident(&gen.name) || gen.inverse.as_deref().is_some_and(|i| !is_ident(i)) {
                    return Err(Error::parse(lineno, column_of(raw, words[1]), "generator names must be identifiers"));
                }
                gens.push(gen);
                GeneratorSet::new(Field::Rational, gens.clone())
                    .map_err(|e| Error::parse(lineno, column_of(raw, words[1]), e.to_string()))?;
            }
            _ => {
                body_start = Some(idx);
                break;
            }
        }
    }
    let gens = Arc::new(GeneratorSet::new(field.unwrap_or(Field::Rational), gens)?);
    let body = body_start.map_or(&lines[..0], |i| &lines[i..]);
    let blocks = parse_blocks(body.iter().copied(), &gens, &gens, &["delta2", "delta3", "counit", "cozero"])?;
    let end = lines.last().map_or(1, |l| l.0);
    let mut maps: BTreeMap<&str, GenHom> = BTreeMap::new();
    for b in blocks {
        let name = b.name;
        maps.insert(name, block_to_hom(b, &gens, &gens)?);
    }
    let d2 = maps.remove("delta2").ok_or_else(|| Error::parse(end, 1, "missing block `delta2`"))?;
    let d3 = maps.remove("delta3").ok_or_else(|| Error::parse(end, 1, "missing block `delta3`"))?;
    CotrussPresentation::new(d2, d3, maps.remove("counit"), maps.remove("cozero"))
}

/// Parses a homomorphism file (a single `map` block) from `source` into
/// `target`.
pub fn parse_map(text: &str, source: &Arc<GeneratorSet>, target: &Arc<GeneratorSet>) -> Result<GenHom> {
    let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut blocks = parse_blocks(lines, source, target, &["map"])?;
    let block = blocks.pop().ok_or_else(|| Error::parse(1, 1, "missing block `map`"))?;
    block_to_hom(block, source, target)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn render_block(out: &mut String, name: &str, hom: &GenHom) {
    let g = hom.source();
    let _ = writeln!(out, "{name}");
    for s in 0..g.symbol_count() {
        let _ = writeln!(out, "  {} -> {}", g.symbol_name(s), hom.image(s));
    }
}

/// Canonical text of a presentation; reparses to an equal presentation.
pub fn render_stx(p: &CotrussPresentation) -> String {
    let mut out = String::new();
    let g = p.gens();
    let _ = writeln!(out, "scalar {}", g.field());
    for gen in g.gens() {
        match &gen.inverse {
            Some(inv) => {
                let _ = writeln!(out, "gen {} {} invertible {inv}", gen.name, gen.parity);
            }
            None => {
                let _ = writeln!(out, "gen {} {}", gen.name, gen.parity);
            }
        }
    }
    render_block(&mut out, "delta2", p.delta2());
    render_block(&mut out, "delta3", p.delta3());
    if let Some(c) = p.counit() {
        render_block(&mut out, "counit", c);
    }
    if let Some(c) = p.cozero() {
        render_block(&mut out, "cozero", c);
    }
    out
}

/// Canonical text of a homomorphism file.
pub fn render_map(h: &GenHom) -> String {
    let mut out = String::new();
    render_block(&mut out, "map", h);
    out
}
