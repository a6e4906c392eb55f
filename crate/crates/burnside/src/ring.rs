//! Ring arithmetic on Burnside elements with mutually checking
//! multiplication strategies, augmentation, and presentation verification.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::element::{element_from_ghost, BurnsideElement};
use crate::error::{Error, Result};
use crate::group::{double_coset_reps, intersect_members, left_cosets, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::util::is_prime;

/// Product via the ghost ring: invert the pointwise product of the mark
/// vectors. This is the default route; the coset-level routes below serve as
/// independent oracles.
pub fn mul(x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
    if !x.lattice().same_as(y.lattice()) {
        return Err(Error::LatticeMismatch);
    }
    let ghost = x.marks().pointwise_mul(&y.marks())?;
    element_from_ghost(&ghost)
        .map_err(|e| Error::Internal(format!("ghost product left the mark image: {e}")))
}

/// Product via the double coset formula:
/// [G/H].[G/K] = sum over HgK of [G/(H cap gKg^{-1})], extended bilinearly.
pub fn mul_via_double_cosets(
    x: &BurnsideElement,
    y: &BurnsideElement,
) -> Result<BurnsideElement> {
    if !x.lattice().same_as(y.lattice()) {
        return Err(Error::LatticeMismatch);
    }
    let lattice = x.lattice();
    let mut acc = BurnsideElement::zero(lattice);
    for (&h, &cx) in x.coeffs() {
        for (&k, &cy) in y.coeffs() {
            let basis = basis_product_double_cosets(lattice, h, k)?;
            acc = &acc + &basis.scaled(cx * cy);
        }
    }
    Ok(acc)
}

fn basis_product_double_cosets(
    lattice: &Arc<SubgroupLattice>,
    h: usize,
    k: usize,
) -> Result<BurnsideElement> {
    let g = lattice.group();
    let hs = &lattice.class(h)?.rep;
    let ks = &lattice.class(k)?.rep;
    let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
    for rep in double_coset_reps(g, hs, ks)? {
        let conj: Vec<u16> = {
            let mut v: Vec<u16> = ks.members().iter().map(|&m| g.conjugate(rep, m)).collect();
            v.sort_unstable();
            v
        };
        let inter = intersect_members(hs.members(), &conj);
        let class = lattice
            .class_of_members(&inter)
            .ok_or_else(|| Error::Internal("intersection is not a known subgroup".into()))?;
        *coeffs.entry(class).or_insert(0) += 1;
    }
    BurnsideElement::from_coeffs(lattice, coeffs)
}

/// Product via explicit orbit decomposition of G/H x G/K under the diagonal
/// action, counting n_J = |(G/H x G/K)_(J) / G| per orbit type.
pub fn mul_via_orbit_types(x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
    if !x.lattice().same_as(y.lattice()) {
        return Err(Error::LatticeMismatch);
    }
    let lattice = x.lattice();
    let mut acc = BurnsideElement::zero(lattice);
    for (&h, &cx) in x.coeffs() {
        for (&k, &cy) in y.coeffs() {
            let basis = basis_product_orbit_types(lattice, h, k)?;
            acc = &acc + &basis.scaled(cx * cy);
        }
    }
    Ok(acc)
}

fn basis_product_orbit_types(
    lattice: &Arc<SubgroupLattice>,
    h: usize,
    k: usize,
) -> Result<BurnsideElement> {
    let g = lattice.group();
    let n = g.order();
    let (h_reps, h_coset_of) = left_cosets(g, &lattice.class(h)?.rep);
    let (k_reps, k_coset_of) = left_cosets(g, &lattice.class(k)?.rep);
    let kn = k_reps.len();
    let points = h_reps.len() * kn;
    let mut orbit_of = vec![usize::MAX; points];
    let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
    for start in 0..points {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        orbit_of[start] = start;
        while let Some(pt) = stack.pop() {
            let (a, b) = (h_reps[pt / kn], k_reps[pt % kn]);
            for gg in 0..n as u16 {
                let ia = h_coset_of[g.mul(gg, a) as usize] as usize;
                let ib = k_coset_of[g.mul(gg, b) as usize] as usize;
                let q = ia * kn + ib;
                if orbit_of[q] == usize::MAX {
                    orbit_of[q] = start;
                    stack.push(q);
                }
            }
        }
        // Stabilizer of the orbit representative (aH, bK).
        let (a, b) = (h_reps[start / kn], k_reps[start % kn]);
        let stab: Vec<u16> = (0..n as u16)
            .filter(|&gg| {
                h_coset_of[g.mul(gg, a) as usize] as usize == start / kn
                    && k_coset_of[g.mul(gg, b) as usize] as usize == start % kn
            })
            .collect();
        let class = lattice
            .class_of_members(&stab)
            .ok_or_else(|| Error::Internal("stabilizer is not a known subgroup".into()))?;
        *coeffs.entry(class).or_insert(0) += 1;
    }
    BurnsideElement::from_coeffs(lattice, coeffs)
}

/// x^k with x^0 = 1.
pub fn pow(x: &BurnsideElement, k: u32) -> Result<BurnsideElement> {
    let mut acc = BurnsideElement::one(x.lattice());
    for _ in 0..k {
        acc = mul(&acc, x)?;
    }
    Ok(acc)
}

/// The augmentation: marks at the trivial subgroup, i.e. the additive map
/// sending [G/H] to [G : H]. A ring homomorphism to the integers.
pub fn augmentation(x: &BurnsideElement) -> i64 {
    let lattice = x.lattice();
    let order = lattice.group().order() as i64;
    x.coeffs()
        .iter()
        .map(|(&h, &c)| c * (order / lattice.classes()[h].order() as i64))
        .sum()
}

/// Closed product formula when H is normal in G:
/// [G/H].[G/K] = |G/H| |(G/K)^{K cap H}| / |W_G(K cap H)| . [G/(K cap H)].
pub fn normal_basis_product(
    lattice: &Arc<SubgroupLattice>,
    h: usize,
    k: usize,
) -> Result<BurnsideElement> {
    let g = lattice.group();
    let hrec = lattice.class(h)?;
    let krec = lattice.class(k)?;
    if hrec.conjugates_count() != 1 {
        return Err(Error::NotSubgroup(format!(
            "class {} is not normal in G",
            lattice.label(h)
        )));
    }
    let inter = intersect_members(hrec.rep.members(), krec.rep.members());
    let inter_class = lattice
        .class_of_members(&inter)
        .ok_or_else(|| Error::Internal("intersection not in lattice".into()))?;
    let inter_sub = Subgroup::from_members(g, inter)?;
    let fixed = crate::group::fixed_point_count(g, &inter_sub, &krec.rep)?;
    let index_h = (g.order() / hrec.order()) as i64;
    let weyl = lattice.weyl_order(inter_class);
    let numerator = index_h * fixed;
    if numerator % weyl != 0 {
        return Err(Error::Internal("normal product formula not integral".into()));
    }
    BurnsideElement::from_coeffs(lattice, [(inter_class, numerator / weyl)])
}

// ---------------------------------------------------------------------------
// Element literals: `<int>*[<class-label>]` terms joined by `+`/`-`.
// ---------------------------------------------------------------------------

/// Parse an element literal such as `3*[c1_o2] - 1*[trivial]`.
pub fn parse_element(lattice: &Arc<SubgroupLattice>, text: &str) -> Result<BurnsideElement> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut coeffs: Vec<(usize, i64)> = Vec::new();
    fn skip_ws(bytes: &[u8], pos: &mut usize) {
        while *pos < bytes.len() && bytes[*pos] == b' ' {
            *pos += 1;
        }
    }
    let mut sign = 1i64;
    skip_ws(bytes, &mut pos);
    if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
        sign = if bytes[pos] == b'-' { -1 } else { 1 };
        pos += 1;
    }
    loop {
        skip_ws(bytes, &mut pos);
        let mut coeff = 1i64;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos > digits_start {
            coeff = text[digits_start..pos].parse().map_err(|_| Error::Parse {
                pos: digits_start,
                msg: "coefficient out of range".into(),
            })?;
            skip_ws(bytes, &mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                skip_ws(bytes, &mut pos);
            } else {
                return Err(Error::Parse {
                    pos,
                    msg: "expected `*` after coefficient".into(),
                });
            }
        }
        if pos >= bytes.len() || bytes[pos] != b'[' {
            return Err(Error::Parse {
                pos,
                msg: "expected `[<class-label>]`".into(),
            });
        }
        pos += 1;
        let label_start = pos;
        while pos < bytes.len() && bytes[pos] != b']' {
            pos += 1;
        }
        if pos >= bytes.len() {
            return Err(Error::Parse {
                pos,
                msg: "unterminated class label".into(),
            });
        }
        let label = &text[label_start..pos];
        pos += 1;
        let class = lattice.resolve_label(label).ok_or_else(|| Error::Parse {
            pos: label_start,
            msg: format!("unknown class label `{label}`"),
        })?;
        coeffs.push((class, sign * coeff));
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
    BurnsideElement::from_coeffs(lattice, coeffs)
}

// ---------------------------------------------------------------------------
// Presentations: a tiny expression grammar over named generators.
// Precedence: ^ > * > binary +/-; explicit parenthesization allowed.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Gen(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = ExprParser {
            bytes: text.as_bytes(),
            text,
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(Error::Parse {
                pos: p.pos,
                msg: "unexpected trailing input in expression".into(),
            });
        }
        Ok(e)
    }

    pub fn eval(
        &self,
        gens: &BTreeMap<String, BurnsideElement>,
        lattice: &Arc<SubgroupLattice>,
    ) -> Result<BurnsideElement> {
        match self {
            Expr::Int(k) => Ok(BurnsideElement::one(lattice).scaled(*k)),
            Expr::Gen(name) => gens
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnknownGenerator(name.clone())),
            Expr::Neg(e) => Ok(-&e.eval(gens, lattice)?),
            Expr::Add(a, b) => Ok(&a.eval(gens, lattice)? + &b.eval(gens, lattice)?),
            Expr::Sub(a, b) => Ok(&a.eval(gens, lattice)? - &b.eval(gens, lattice)?),
            Expr::Mul(a, b) => mul(&a.eval(gens, lattice)?, &b.eval(gens, lattice)?),
            Expr::Pow(a, k) => pow(&a.eval(gens, lattice)?, *k),
        }
    }
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos] == b' ' {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(Error::Parse {
                    pos: self.pos,
                    msg: "expected a nonnegative integer exponent".into(),
                });
            }
            let k: u32 = self.text[start..self.pos]
                .parse()
                .map_err(|_| Error::Parse {
                    pos: start,
                    msg: "exponent out of range".into(),
                })?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.bytes.get(self.pos) != Some(&b')') {
                    return Err(Error::Parse {
                        pos: self.pos,
                        msg: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: i64 = self.text[start..self.pos]
                    .parse()
                    .map_err(|_| Error::Parse {
                        pos: start,
                        msg: "integer out of range".into(),
                    })?;
                Ok(Expr::Int(v))
            }
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Gen(self.text[start..self.pos].to_string()))
            }
            _ => Err(Error::Parse {
                pos: self.pos,
                msg: "expected an atom".into(),
            }),
        }
    }
}

/// A relation `lhs = rhs` over named generators, kept with its source text.
#[derive(Debug, Clone)]
pub struct Relation {
    pub text: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Relation {
    pub fn parse(text: &str) -> Result<Relation> {
        let Some(eq) = text.find('=') else {
            return Err(Error::Parse {
                pos: text.len(),
                msg: "relation must contain `=`".into(),
            });
        };
        let lhs = Expr::parse(text[..eq].trim())?;
        let rhs = Expr::parse(text[eq + 1..].trim())?;
        Ok(Relation {
            text: text.trim().to_string(),
            lhs,
            rhs,
        })
    }
}

/// Named generators mapped to Burnside elements plus a list of relations.
#[derive(Debug, Clone)]
pub struct RelationSet {
    pub name: String,
    pub generators: Vec<(String, BurnsideElement)>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone)]
pub struct RelationOutcome {
    pub relation: String,
    pub pass: bool,
    pub lhs: BurnsideElement,
    pub rhs: BurnsideElement,
}

#[derive(Debug, Clone)]
pub struct PresentationReport {
    pub name: String,
    pub outcomes: Vec<RelationOutcome>,
}

impl PresentationReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }
}

/// Evaluate every relation with the ghost-route product and compare
/// coefficientwise; failing relations report both sides expanded.
pub fn verify_presentation(
    lattice: &Arc<SubgroupLattice>,
    rs: &RelationSet,
) -> Result<PresentationReport> {
    let gens: BTreeMap<String, BurnsideElement> = rs
        .generators
        .iter()
        .map(|(n, e)| (n.clone(), e.clone()))
        .collect();
    let mut outcomes = Vec::with_capacity(rs.relations.len());
    for rel in &rs.relations {
        let lhs = rel.lhs.eval(&gens, lattice)?;
        let rhs = rel.rhs.eval(&gens, lattice)?;
        outcomes.push(RelationOutcome {
            relation: rel.text.clone(),
            pass: lhs == rhs,
            lhs,
            rhs,
        });
    }
    Ok(PresentationReport {
        name: rs.name.clone(),
        outcomes,
    })
}

/// The presentation suite this lattice is known to satisfy, when the group
/// is one of the recognized families (detected structurally, so isomorphic
/// realizations share suites): the nonabelian group of order 6, cyclic
/// p-groups, and elementary abelian groups of rank 2.
pub fn builtin_presentation(lattice: &Arc<SubgroupLattice>) -> Result<Option<RelationSet>> {
    let g = lattice.group();
    let n = g.order() as u64;
    if n == 6 && !g.is_abelian() {
        let a = class_of_order(lattice, 2)?;
        let b = class_of_order(lattice, 3)?;
        let gens = vec![
            ("a".into(), BurnsideElement::basis(lattice, a)?),
            ("b".into(), BurnsideElement::basis(lattice, b)?),
            ("c".into(), BurnsideElement::basis(lattice, 0)?),
        ];
        let relations = [
            "a^2 = a + c",
            "b^2 = 2*b",
            "c^2 = 6*c",
            "a*b = c",
            "a*c = 3*c",
            "b*c = 2*c",
        ]
        .iter()
        .map(|t| Relation::parse(t))
        .collect::<Result<Vec<_>>>()?;
        return Ok(Some(RelationSet {
            name: "sigma3".into(),
            generators: gens,
            relations,
        }));
    }
    if let Some((p, e)) = prime_power(n) {
        if is_cyclic(g) {
            // a_i = [G / Z/p^{e-i}]: the unique class of order p^{e-i}.
            let mut gens = Vec::new();
            for i in 1..=e {
                let class = class_of_order(lattice, p.pow(e - i))?;
                gens.push((format!("a{i}"), BurnsideElement::basis(lattice, class)?));
            }
            let mut relations = Vec::new();
            for i in 1..=e {
                for j in i..=e {
                    relations.push(Relation::parse(&format!("a{i}*a{j} = {}*a{j}", p.pow(i)))?);
                }
            }
            return Ok(Some(RelationSet {
                name: format!("cyclic-{p}-power"),
                generators: gens,
                relations,
            }));
        }
        if e == 2 && g.is_abelian() {
            // Elementary abelian of rank 2: p+1 classes of order p. The
            // relations are symmetric in the a_i, so any labeling works.
            let index_classes: Vec<usize> = (0..lattice.class_count())
                .filter(|&c| lattice.classes()[c].order() as u64 == p)
                .collect();
            if index_classes.len() != (p + 1) as usize {
                return Err(Error::Internal(
                    "unexpected class structure for elementary rank 2".into(),
                ));
            }
            let mut gens = vec![("b".to_string(), BurnsideElement::basis(lattice, 0)?)];
            for (i, &c) in index_classes.iter().enumerate() {
                gens.push((format!("a{i}"), BurnsideElement::basis(lattice, c)?));
            }
            let mut relations = Vec::new();
            for i in 0..index_classes.len() {
                relations.push(Relation::parse(&format!("a{i}^2 = {p}*a{i}"))?);
                relations.push(Relation::parse(&format!("a{i}*b = {p}*b"))?);
                for j in (i + 1)..index_classes.len() {
                    relations.push(Relation::parse(&format!("a{i}*a{j} = b"))?);
                }
            }
            relations.push(Relation::parse(&format!("b^2 = {}*b", p * p))?);
            return Ok(Some(RelationSet {
                name: format!("elementary-{p}-rank2"),
                generators: gens,
                relations,
            }));
        }
    }
    Ok(None)
}

fn class_of_order(lattice: &Arc<SubgroupLattice>, order: u64) -> Result<usize> {
    let hits: Vec<usize> = (0..lattice.class_count())
        .filter(|&c| lattice.classes()[c].order() as u64 == order)
        .collect();
    match hits.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Internal(format!(
            "expected a unique class of order {order}, found {}",
            hits.len()
        ))),
    }
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let ps = crate::util::prime_divisors(n);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut m = n;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    debug_assert!(is_prime(p));
    (m == 1).then_some((p, e))
}

fn is_cyclic(g: &crate::group::FiniteGroup) -> bool {
    (0..g.order() as u16).any(|x| g.element_order(x) == g.order())
}
