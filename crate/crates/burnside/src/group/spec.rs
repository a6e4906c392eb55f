//! The textual group-spec grammar and its realization as concrete groups.
//!
//! Grammar (exact):
//! `cyclic:<n>` | `dihedral:<n>` (order 2n) | `symmetric:<n>` | `alternating:<n>`
//! | `quaternion:8` | `elementary:<p>:<n>` | `abelian:<d1>,...,<dk>`
//! | `perm:<points>:<cycles>,...` | `product:<spec>,<spec>`

use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::util::is_prime;

/// Default cap on the order of a realized group.
pub const DEFAULT_ORDER_CAP: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Symmetric(u32),
    Alternating(u32),
    Quaternion8,
    Elementary { p: u64, n: u32 },
    Abelian(Vec<u64>),
    /// Permutation group on `points` points generated by the given cycles
    /// (stored 0-based; the grammar is 1-based).
    Perm { points: u16, cycles: Vec<Vec<u16>> },
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alternating:{n}"),
            GroupSpec::Quaternion8 => write!(f, "quaternion:8"),
            GroupSpec::Elementary { p, n } => write!(f, "elementary:{p}:{n}"),
            GroupSpec::Abelian(ds) => {
                write!(f, "abelian:")?;
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
            GroupSpec::Perm { points, cycles } => {
                write!(f, "perm:{points}:")?;
                for (i, c) in cycles.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "(")?;
                    for (j, pt) in c.iter().enumerate() {
                        if j > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{}", pt + 1)?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
            GroupSpec::Product(a, b) => write!(f, "product:{a},{b}"),
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn take_ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }

    fn take_u64(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    /// True when the remaining input starts with a digit.
    fn at_digit(&self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut cur = Cursor { text, pos: 0 };
        let spec = parse_spec(&mut cur)?;
        if cur.pos != text.len() {
            return cur.err("unexpected trailing input");
        }
        Ok(spec)
    }

    /// Order of the realized group, when it is known without running the
    /// closure (everything except `perm`).
    pub fn known_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => Some(2 * n),
            GroupSpec::Symmetric(n) => factorial(*n),
            GroupSpec::Alternating(n) => factorial(*n).map(|f| if *n >= 2 { f / 2 } else { f }),
            GroupSpec::Quaternion8 => Some(8),
            GroupSpec::Elementary { p, n } => p.checked_pow(*n),
            GroupSpec::Abelian(ds) => ds.iter().try_fold(1u64, |acc, d| acc.checked_mul(*d)),
            GroupSpec::Perm { .. } => None,
            GroupSpec::Product(a, b) => a.known_order()?.checked_mul(b.known_order()?),
        }
    }

    pub fn build(&self, cap: u64) -> Result<FiniteGroup> {
        if let Some(order) = self.known_order() {
            if order > cap {
                return Err(Error::OrderCap { order, cap });
            }
        }
        crate::group::construct::realize(self, cap)
    }
}

/// Parse a group spec and realize it under the default order cap.
pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    parse_group_with_cap(text, DEFAULT_ORDER_CAP)
}

pub fn parse_group_with_cap(text: &str, cap: u64) -> Result<FiniteGroup> {
    GroupSpec::parse(text)?.build(cap)
}

fn factorial(n: u32) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

fn parse_spec(cur: &mut Cursor) -> Result<GroupSpec> {
    let start = cur.pos;
    let family = cur.take_ident();
    if family.is_empty() {
        return cur.err("expected a group family name");
    }
    cur.eat(':')?;
    match family {
        "cyclic" => {
            let n = cur.take_u64()?;
            if n == 0 {
                return cur.err("cyclic order must be at least 1");
            }
            Ok(GroupSpec::Cyclic(n))
        }
        "dihedral" => {
            let n = cur.take_u64()?;
            if n == 0 {
                return cur.err("dihedral parameter must be at least 1");
            }
            Ok(GroupSpec::Dihedral(n))
        }
        "symmetric" => {
            let n = cur.take_u64()?;
            if n == 0 || n > 20 {
                return cur.err("symmetric degree must be between 1 and 20");
            }
            Ok(GroupSpec::Symmetric(n as u32))
        }
        "alternating" => {
            let n = cur.take_u64()?;
            if n == 0 || n > 20 {
                return cur.err("alternating degree must be between 1 and 20");
            }
            Ok(GroupSpec::Alternating(n as u32))
        }
        "quaternion" => {
            let n = cur.take_u64()?;
            if n != 8 {
                return cur.err("only quaternion:8 is supported");
            }
            Ok(GroupSpec::Quaternion8)
        }
        "elementary" => {
            let p = cur.take_u64()?;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            cur.eat(':')?;
            let n = cur.take_u64()?;
            if n == 0 || n > 16 {
                return cur.err("elementary rank must be between 1 and 16");
            }
            Ok(GroupSpec::Elementary { p, n: n as u32 })
        }
        "abelian" => {
            let mut ds = vec![cur.take_u64()?];
            // Greedy integer list: stop at a comma that does not introduce
            // another integer (it then belongs to an enclosing product).
            while cur.peek() == Some(',') {
                let mark = cur.pos;
                cur.pos += 1;
                if cur.at_digit() {
                    ds.push(cur.take_u64()?);
                } else {
                    cur.pos = mark;
                    break;
                }
            }
            if ds.iter().any(|&d| d == 0) {
                return Err(Error::Parse {
                    pos: start,
                    msg: "abelian invariant factors must be at least 1".into(),
                });
            }
            Ok(GroupSpec::Abelian(ds))
        }
        "perm" => {
            let points = cur.take_u64()?;
            if points == 0 || points > 512 {
                return cur.err("perm points must be between 1 and 512");
            }
            cur.eat(':')?;
            let mut cycles = vec![parse_cycle(cur, points as u16)?];
            while cur.peek() == Some(',') {
                let mark = cur.pos;
                cur.pos += 1;
                if cur.peek() == Some('(') {
                    cycles.push(parse_cycle(cur, points as u16)?);
                } else {
                    cur.pos = mark;
                    break;
                }
            }
            Ok(GroupSpec::Perm {
                points: points as u16,
                cycles,
            })
        }
        "product" => {
            let a = parse_spec(cur)?;
            cur.eat(',')?;
            let b = parse_spec(cur)?;
            Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
        }
        other => Err(Error::Parse {
            pos: start,
            msg: format!("unknown group family `{other}`"),
        }),
    }
}

fn parse_cycle(cur: &mut Cursor, points: u16) -> Result<Vec<u16>> {
    cur.eat('(')?;
    let mut cycle = Vec::new();
    loop {
        while cur.peek() == Some(' ') {
            cur.pos += 1;
        }
        if cur.peek() == Some(')') {
            cur.pos += 1;
            break;
        }
        let at = cur.pos;
        let pt = cur.take_u64()?;
        if pt == 0 || pt > points as u64 {
            return Err(Error::Parse {
                pos: at,
                msg: format!("cycle point {pt} out of range 1..={points}"),
            });
        }
        let pt = (pt - 1) as u16;
        if cycle.contains(&pt) {
            return Err(Error::Parse {
                pos: at,
                msg: "repeated point in cycle".into(),
            });
        }
        cycle.push(pt);
    }
    if cycle.is_empty() {
        return cur.err("empty cycle");
    }
    Ok(cycle)
}
