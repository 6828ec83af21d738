//! Canonical printing with minimal parentheses.
//!
//! Precedence, loosest first: `<->`, `->`, `|`, `&`, then the unary
//! operators. `->` and `<->` associate to the right, `&` and `|` to the left.

use std::fmt;

use super::Formula;

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;
const ATOM: u8 = 6;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Var(_) | Formula::Top | Formula::Bot => ATOM,
        Formula::Not(_) | Formula::K(..) | Formula::E(_) | Formula::C(_) => UNARY,
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Implies(..) => IMPLIES,
        Formula::Iff(..) => IFF,
    }
}

fn write_wrapped(f: &Formula, out: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
    if parens {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

fn write_binary(
    out: &mut fmt::Formatter<'_>,
    lhs: &Formula,
    op: &str,
    rhs: &Formula,
    level: u8,
    right_assoc: bool,
) -> fmt::Result {
    let (lp, rp) = (precedence(lhs), precedence(rhs));
    let (lhs_parens, rhs_parens) = if right_assoc {
        (lp <= level, rp < level)
    } else {
        (lp < level, rp <= level)
    };
    write_wrapped(lhs, out, lhs_parens)?;
    write!(out, " {op} ")?;
    write_wrapped(rhs, out, rhs_parens)
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => out.write_str(v),
            Formula::Top => out.write_str("top"),
            Formula::Bot => out.write_str("bot"),
            Formula::Not(f) => {
                out.write_str("~")?;
                write_wrapped(f, out, precedence(f) < UNARY)
            }
            Formula::K(a, f) => {
                write!(out, "K{a} ")?;
                write_wrapped(f, out, precedence(f) < UNARY)
            }
            Formula::E(f) => {
                out.write_str("E ")?;
                write_wrapped(f, out, precedence(f) < UNARY)
            }
            Formula::C(f) => {
                out.write_str("C ")?;
                write_wrapped(f, out, precedence(f) < UNARY)
            }
            Formula::And(f, g) => write_binary(out, f, "&", g, AND, false),
            Formula::Or(f, g) => write_binary(out, f, "|", g, OR, false),
            Formula::Implies(f, g) => write_binary(out, f, "->", g, IMPLIES, true),
            Formula::Iff(f, g) => write_binary(out, f, "<->", g, IFF, true),
        }
    }
}
