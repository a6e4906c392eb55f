//! The Burnside ring of O(2) = S^1 x| Z/2, with lazily evaluated marks over
//! the infinite class set and closed-form p-perfection.
//!
//! The subgroup classes with finite Weyl group are the full group, SO(2),
//! and the dihedral classes D_n = Z/n x| Z/2 for n >= 1 (Weyl orders 1, 2,
//! 2). Rotation classes Z/n and the reflection class (a representative of
//! D_1) are accepted as descriptors where the torus saturation applies.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::util::{is_prime, p_valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum O2Subgroup {
    Full,
    SO2,
    /// Z/n x| Z/2 for n >= 1.
    Dihedral(u64),
    /// Z/n x| 0 for n >= 1; infinite Weyl group.
    Rotation(u64),
    /// 0 x| Z/2, a representative of the Dihedral(1) class.
    Reflection,
}

impl fmt::Display for O2Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            O2Subgroup::Full => write!(f, "full"),
            O2Subgroup::SO2 => write!(f, "so2"),
            O2Subgroup::Dihedral(n) => write!(f, "d{n}"),
            O2Subgroup::Rotation(n) => write!(f, "rot{n}"),
            O2Subgroup::Reflection => write!(f, "refl"),
        }
    }
}

impl O2Subgroup {
    pub fn parse(s: &str) -> Result<O2Subgroup> {
        let parse_n = |digits: &str, at: usize| -> Result<u64> {
            let n: u64 = digits.parse().map_err(|_| Error::Parse {
                pos: at,
                msg: "expected an integer parameter".into(),
            })?;
            if n == 0 {
                return Err(Error::Parse {
                    pos: at,
                    msg: "parameter must be at least 1".into(),
                });
            }
            Ok(n)
        };
        match s {
            "full" => Ok(O2Subgroup::Full),
            "so2" => Ok(O2Subgroup::SO2),
            "refl" => Ok(O2Subgroup::Reflection),
            _ if s.starts_with("rot") => Ok(O2Subgroup::Rotation(parse_n(&s[3..], 3)?)),
            _ if s.starts_with('d') => Ok(O2Subgroup::Dihedral(parse_n(&s[1..], 1)?)),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown O(2) subgroup `{s}`"),
            }),
        }
    }

    /// Conjugacy-class canonical form: the reflection subgroup is D_1.
    pub fn canonical(&self) -> O2Subgroup {
        match self {
            O2Subgroup::Reflection => O2Subgroup::Dihedral(1),
            other => *other,
        }
    }

    pub fn has_finite_weyl(&self) -> bool {
        !matches!(self.canonical(), O2Subgroup::Rotation(_))
    }

    /// |W_{O(2)} S| for the finite-Weyl classes.
    pub fn weyl_order(&self) -> Result<i64> {
        match self.canonical() {
            O2Subgroup::Full => Ok(1),
            O2Subgroup::SO2 => Ok(2),
            O2Subgroup::Dihedral(_) => Ok(2),
            other => Err(Error::InfiniteWeyl(other.to_string())),
        }
    }
}

/// A finitely supported integer combination of the basis
/// 1 = [G/G], y = [G/SO(2)], x_n = [G/D_n].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct O2Element {
    pub unit: i64,
    pub y: i64,
    pub x: BTreeMap<u64, i64>,
}

impl fmt::Display for O2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(String, i64)> = Vec::new();
        if self.unit != 0 {
            terms.push(("1".into(), self.unit));
        }
        if self.y != 0 {
            terms.push(("y".into(), self.y));
        }
        for (&n, &c) in &self.x {
            if c != 0 {
                terms.push((format!("x{n}"), c));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (name, c)) in terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{c}*{name}")?;
            } else if *c < 0 {
                write!(f, " - {}*{name}", -c)?;
            } else {
                write!(f, " + {c}*{name}")?;
            }
        }
        Ok(())
    }
}

impl O2Element {
    pub fn zero() -> Self {
        O2Element::default()
    }

    pub fn one() -> Self {
        O2Element {
            unit: 1,
            ..Default::default()
        }
    }

    pub fn y_basis() -> Self {
        O2Element {
            y: 1,
            ..Default::default()
        }
    }

    pub fn x_basis(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("x_n requires n >= 1".into()));
        }
        let mut x = BTreeMap::new();
        x.insert(n, 1);
        Ok(O2Element {
            unit: 0,
            y: 0,
            x,
        })
    }

    fn add_x(&mut self, n: u64, c: i64) {
        let entry = self.x.entry(n).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.x.remove(&n);
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return O2Element::zero();
        }
        O2Element {
            unit: self.unit * k,
            y: self.y * k,
            x: self.x.iter().map(|(&n, &c)| (n, c * k)).collect(),
        }
    }

    /// Parse a literal such as `2*x6 - y + 3*1`.
    pub fn parse(text: &str) -> Result<O2Element> {
        let mut out = O2Element::zero();
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let skip_ws = |bytes: &[u8], pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos] == b' ' {
                *pos += 1;
            }
        };
        let mut sign = 1i64;
        skip_ws(bytes, &mut pos);
        if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
            sign = if bytes[pos] == b'-' { -1 } else { 1 };
            pos += 1;
        }
        loop {
            skip_ws(bytes, &mut pos);
            let mut coeff = 1i64;
            let d0 = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let leading_digits = &text[d0..pos];
            let mut consumed_basis = false;
            if !leading_digits.is_empty() {
                skip_ws(bytes, &mut pos);
                if pos < bytes.len() && bytes[pos] == b'*' {
                    coeff = leading_digits.parse().map_err(|_| Error::Parse {
                        pos: d0,
                        msg: "coefficient out of range".into(),
                    })?;
                    pos += 1;
                    skip_ws(bytes, &mut pos);
                } else if leading_digits == "1" {
                    // bare `1`: the unit basis element
                    out.unit += sign;
                    consumed_basis = true;
                } else {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected `*` after coefficient".into(),
                    });
                }
            }
            if !consumed_basis {
                match bytes.get(pos) {
                    Some(b'1') => {
                        pos += 1;
                        out.unit += sign * coeff;
                    }
                    Some(b'y') => {
                        pos += 1;
                        out.y += sign * coeff;
                    }
                    Some(b'x') => {
                        pos += 1;
                        let n0 = pos;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let n: u64 = text[n0..pos].parse().map_err(|_| Error::Parse {
                            pos: n0,
                            msg: "expected an index after x".into(),
                        })?;
                        if n == 0 {
                            return Err(Error::Parse {
                                pos: n0,
                                msg: "x index must be at least 1".into(),
                            });
                        }
                        out.add_x(n, sign * coeff);
                    }
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: "expected a basis element `1`, `y`, or `x<n>`".into(),
                        })
                    }
                }
            }
            skip_ws(bytes, &mut pos);
            if pos == bytes.len() {
                break;
            }
            sign = match bytes[pos] {
                b'+' => 1,
                b'-' => -1,
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected `+` or `-` between terms".into(),
                    })
                }
            };
            pos += 1;
        }
        Ok(out)
    }
}

impl std::ops::Add for &O2Element {
    type Output = O2Element;
    fn add(self, rhs: &O2Element) -> O2Element {
        let mut out = self.clone();
        out.unit += rhs.unit;
        out.y += rhs.y;
        for (&n, &c) in &rhs.x {
            out.add_x(n, c);
        }
        out
    }
}

/// Bilinear extension of the relations 1 is the unit, y.y = 2y,
/// x_n . x_m = 2 x_gcd(n,m), x_n . y = 0.
pub fn o2_mul(a: &O2Element, b: &O2Element) -> O2Element {
    let mut out = O2Element::zero();
    out.unit = a.unit * b.unit;
    // y-coefficient: a0*by + ay*b0 + 2*ay*by  (y*y = 2y)
    out.y = a.unit * b.y + a.y * b.unit + 2 * a.y * b.y;
    // x terms: unit passthrough plus 2 x_gcd cross terms. x_n*y vanishes.
    for (&m, &cb) in &b.x {
        out.add_x(m, a.unit * cb);
    }
    for (&n, &ca) in &a.x {
        out.add_x(n, ca * b.unit);
        for (&m, &cb) in &b.x {
            out.add_x(crate::util::gcd(n as i64, m as i64) as u64, 2 * ca * cb);
        }
    }
    out
}

/// Evaluate the mark of an element at a finite-Weyl subgroup class:
/// the unit has mark 1 everywhere; y has mark 2 at SO(2) and 0 elsewhere;
/// x_n has mark 2 at D_k iff k divides n and 0 elsewhere. These closed
/// forms are the stable fixed-coset counts of finite dihedral models; the
/// diagonal equals the Weyl order as in the finite table of marks.
pub fn o2_mark(a: &O2Element, s: &O2Subgroup) -> Result<i64> {
    let s = s.canonical();
    if !s.has_finite_weyl() {
        return Err(Error::InfiniteWeyl(s.to_string()));
    }
    let mut total = a.unit; // [G/G] contributes 1 at every class
    match s {
        O2Subgroup::SO2 => {
            total += 2 * a.y;
        }
        O2Subgroup::Dihedral(k) => {
            for (&n, &c) in &a.x {
                if n % k == 0 {
                    total += 2 * c;
                }
            }
        }
        O2Subgroup::Full => {}
        _ => unreachable!("canonicalized"),
    }
    Ok(total)
}

/// Closed-form p-perfection (H_p, H^p) of an O(2) subgroup class. The torus
/// saturation is applied first, sending rotation classes to SO(2). At p = 2
/// every class collapses onto (SO(2), O(2)). At odd p the reflections, which
/// have order 2, already generate each dihedral subgroup, so the p-residual
/// is the subgroup itself and the Sylow extension inside the Weyl group of
/// order 2 is trivial.
pub fn o2_p_perfection(s: &O2Subgroup, p: u64) -> Result<(O2Subgroup, O2Subgroup)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let omega = match s.canonical() {
        O2Subgroup::Rotation(_) => O2Subgroup::SO2,
        other => other,
    };
    if p == 2 {
        return Ok((O2Subgroup::SO2, O2Subgroup::Full));
    }
    Ok(match omega {
        O2Subgroup::Full => (O2Subgroup::Full, O2Subgroup::Full),
        O2Subgroup::SO2 => (O2Subgroup::SO2, O2Subgroup::SO2),
        O2Subgroup::Dihedral(n) => (O2Subgroup::Dihedral(n), O2Subgroup::Dihedral(n)),
        _ => unreachable!("omega lands in a finite-Weyl class"),
    })
}

/// p-adic valuation helper re-exported for the CLI spectrum report.
pub fn dihedral_p_valuation(n: u64, p: u64) -> u32 {
    p_valuation(n, p)
}
