//! CDGA presentations: generators, differentials and relations written as
//! polynomial strings, expanded to explicit structure constants.
//!
//! Grammar: identifiers, integers and `p/q` rationals, `+ - * ^`, and
//! parentheses. Monomials are ordered lexicographically in generator
//! declaration order; within a degree the basis lists larger monomials
//! first.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::duality::PdAlgebra;
use crate::error::{Error, Result};
use crate::graded::{Cdga, CdgaMorphism, GradedSpace, Quotient};
use crate::linalg::Scalar;
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub degree: i32,
    pub class: String,
}

/// A presentation file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(default)]
    pub name: String,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub differentials: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    /// Top degree kept. Defaults to the orientation degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<i32>,
    /// Accept a quotient that is still nonzero above `max_degree` and cut
    /// it off there.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncate: bool,
}

/// Exponent vector in declaration order; odd generators have exponent ≤ 1.
pub type Monomial = Vec<u32>;

/// A polynomial in the free graded-commutative algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<Monomial, Scalar>);

/// Generators with their degrees, and the arithmetic of the free
/// graded-commutative algebra on them.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    names: Vec<String>,
    degrees: Vec<i32>,
}

impl FreeAlgebra {
    pub fn new(generators: &[Generator]) -> Result<Self> {
        let mut seen = HashMap::new();
        for g in generators {
            if g.degree <= 0 {
                return Err(Error::Invalid(format!(
                    "generator `{}` must have positive degree",
                    g.name
                )));
            }
            if !valid_identifier(&g.name) {
                return Err(Error::Invalid(format!("`{}` is not an identifier", g.name)));
            }
            if seen.insert(g.name.clone(), ()).is_some() {
                return Err(Error::Invalid(format!("generator `{}` declared twice", g.name)));
            }
        }
        Ok(FreeAlgebra {
            names: generators.iter().map(|g| g.name.clone()).collect(),
            degrees: generators.iter().map(|g| g.degree).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn degree(&self, m: &Monomial) -> i32 {
        m.iter().zip(&self.degrees).map(|(&e, &d)| e as i32 * d).sum()
    }

    pub fn generator(&self, i: usize) -> Poly {
        let mut m = vec![0; self.rank()];
        m[i] = 1;
        Poly::monomial(m, Scalar::one())
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sign and product of two monomials; `None` when an odd generator
    /// would appear twice.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut odd_after = 0u32;
        let mut negative = false;
        // Moving each odd generator of `b` left past the odd generators of
        // `a` with larger index.
        for i in (0..self.rank()).rev() {
            let odd = self.degrees[i] % 2 != 0;
            if odd {
                if a[i] > 0 && b[i] > 0 {
                    return None;
                }
                if b[i] > 0 && odd_after % 2 == 1 {
                    negative = !negative;
                }
                odd_after += a[i];
            }
        }
        Some((negative, a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }

    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::default();
        for (a, x) in &p.0 {
            for (b, y) in &q.0 {
                if let Some((neg, m)) = self.mul_monomials(a, b) {
                    let c = x * y;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, p: &Poly, k: u32) -> Poly {
        let mut out = Poly::constant(Scalar::one(), self.rank());
        for _ in 0..k {
            out = self.mul(&out, p);
        }
        out
    }

    /// Extends `d` on generators to monomials by the Leibniz rule.
    pub fn differential(&self, d_gens: &[Poly], m: &Monomial) -> Poly {
        let mut out = Poly::default();
        let mut prefix = Poly::constant(Scalar::one(), self.rank());
        let mut prefix_degree = 0;
        let factors: Vec<usize> = (0..self.rank())
            .flat_map(|i| std::iter::repeat(i).take(m[i] as usize))
            .collect();
        for (k, &g) in factors.iter().enumerate() {
            let mut rest = Poly::constant(Scalar::one(), self.rank());
            for &h in &factors[k + 1..] {
                rest = self.mul(&rest, &self.generator(h));
            }
            let term = self.mul(&self.mul(&prefix, &d_gens[g]), &rest);
            let s = if prefix_degree % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            out = out.plus(&term.scaled(&s));
            prefix = self.mul(&prefix, &self.generator(g));
            prefix_degree += self.degrees[g];
        }
        out
    }

    /// All monomials of degree `≤ bound`, sorted by degree and then
    /// descending lexicographic order.
    pub fn monomials(&self, bound: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.rank()];
        self.enumerate(0, bound, &mut cur, &mut out);
        out.sort_by(|a, b| self.degree(a).cmp(&self.degree(b)).then_with(|| b.cmp(a)));
        out
    }

    fn enumerate(&self, i: usize, budget: i32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.rank() {
            out.push(cur.clone());
            return;
        }
        let d = self.degrees[i];
        let max = if d % 2 != 0 { 1 } else { (budget / d) as u32 };
        for e in 0..=max {
            if e as i32 * d > budget {
                break;
            }
            cur[i] = e;
            self.enumerate(i + 1, budget - e as i32 * d, cur, out);
        }
        cur[i] = 0;
    }

    pub fn monomial_name(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{e}", self.names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Parses a polynomial string over these generators.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let mut p = Parser {
            free: self,
            chars: text.chars().collect(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }

    /// Evaluates `p` in a graded-commutative algebra given the image of
    /// each generator.
    pub fn evaluate(&self, p: &Poly, images: &[Vector], one: &Vector, mul: &dyn Fn(&Vector, &Vector) -> Vector) -> Vector {
        let mut out = Vector::zero();
        for (m, c) in &p.0 {
            let mut v = one.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    v = mul(&v, &images[i]);
                }
            }
            out.add_scaled(&v, c);
        }
        out
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Poly {
    pub fn constant(c: Scalar, rank: usize) -> Poly {
        Poly::monomial(vec![0; rank], c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        let mut p = Poly::default();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        let e = self.0.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn plus(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Poly {
        let mut out = Poly::default();
        for (m, x) in &self.0 {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.0.iter()
    }

    /// The common degree of all terms, or an error naming the culprit.
    pub fn homogeneous_degree(&self, free: &FreeAlgebra) -> Result<Option<i32>> {
        let mut degs = self.0.keys().map(|m| free.degree(m));
        let Some(first) = degs.next() else {
            return Ok(None);
        };
        if degs.any(|d| d != first) {
            return Err(Error::Invalid("polynomial is not homogeneous".into()));
        }
        Ok(Some(first))
    }
}

struct Parser<'a> {
    free: &'a FreeAlgebra,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' {
                acc.plus(&t)
            } else {
                acc.plus(&t.scaled(&-Scalar::one()))
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.power()?;
            acc = self.free.mul(&acc, &f);
        }
        Ok(if negate { acc.scaled(&-Scalar::one()) } else { acc })
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent out of range"))?;
            return Ok(self.free.pow(&base, k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Poly> {
        let rank = self.free.rank();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                }
                Ok(Poly::constant(Scalar::new(num, den), rank))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric()
                        || self.chars[self.pos] == '_'
                        || self.chars[self.pos] == '\'')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.free.index(&name) {
                    Some(i) => Ok(self.free.generator(i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown generator `{name}`")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// A presentation expanded to an explicit CDGA.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    pub presentation: Presentation,
    pub free: FreeAlgebra,
    pub algebra: Arc<Cdga>,
    /// The truncated free algebra the quotient was taken in.
    pub ambient: Arc<Cdga>,
    pub projection: CdgaMorphism,
    pub cosets: Quotient,
    monomials: Vec<Monomial>,
}

impl PresentedAlgebra {
    /// The element of the algebra given by a polynomial string.
    pub fn element(&self, text: &str) -> Result<Vector> {
        let p = self.free.parse(text)?;
        p.homogeneous_degree(&self.free)?;
        Ok(self.project(&p))
    }

    pub fn project(&self, p: &Poly) -> Vector {
        let v = poly_to_vector(p, &self.monomials);
        self.projection.apply(&v)
    }

    /// The algebra oriented by the declared class, if there is one.
    pub fn poincare(&self) -> Result<Option<PdAlgebra>> {
        match self.orientation()? {
            None => Ok(None),
            Some((n, class)) => Ok(Some(PdAlgebra::new(Arc::clone(&self.algebra), n, &class)?)),
        }
    }

    /// The orientation class, if declared.
    pub fn orientation(&self) -> Result<Option<(i32, Vector)>> {
        match &self.presentation.orientation {
            None => Ok(None),
            Some(o) => Ok(Some((o.degree, self.element(&o.class)?))),
        }
    }
}

fn poly_to_vector(p: &Poly, monomials: &[Monomial]) -> Vector {
    let mut v = Vector::zero();
    for (m, c) in p.terms() {
        // Monomials beyond the ambient range vanish in the quotient.
        if let Some(i) = monomials.iter().position(|x| x == m) {
            v.add_term(i, c.clone());
        }
    }
    v
}

/// The free graded-commutative algebra on `free`, cut off above `bound`,
/// with `d` given on generators.
pub fn truncated_free(free: &FreeAlgebra, d_gens: &[Poly], bound: i32) -> Result<(Cdga, Vec<Monomial>)> {
    let monomials = free.monomials(bound);
    let names = monomials
        .iter()
        .map(|m| (free.monomial_name(m), free.degree(m)))
        .collect();
    let space = GradedSpace::new(names)?;
    let n = monomials.len();
    let mut product = Vec::with_capacity(n * n);
    for a in &monomials {
        for b in &monomials {
            let p = match free.mul_monomials(a, b) {
                Some((neg, m)) => {
                    Poly::monomial(m, if neg { -Scalar::one() } else { Scalar::one() })
                }
                None => Poly::default(),
            };
            product.push(poly_to_vector(&p, &monomials));
        }
    }
    let differential = monomials
        .iter()
        .map(|m| poly_to_vector(&free.differential(d_gens, m), &monomials))
        .collect();
    let unit = Vector::basis(0);
    Ok((Cdga::from_tables(space, unit, product, differential)?, monomials))
}

/// Spanning set of the ideal generated by `relations` inside the
/// truncated free algebra on `monomials`.
fn ideal_span(free: &FreeAlgebra, relations: &[Poly], monomials: &[Monomial], bound: i32) -> Vec<Vector> {
    let mut out = Vec::new();
    for r in relations {
        for m in monomials {
            let p = free.mul(&Poly::monomial(m.clone(), Scalar::one()), r);
            if p.terms().all(|(x, _)| free.degree(x) <= bound) && !p.is_zero() {
                out.push(poly_to_vector(&p, monomials));
            }
        }
    }
    out
}

impl Presentation {
    pub fn from_toml(text: &str) -> Result<Presentation> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_column(text, s.start))
                .unwrap_or((0, 0));
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("presentations serialize")
    }

    pub fn load(path: &std::path::Path) -> Result<Presentation> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    fn parse_field(&self, free: &FreeAlgebra, what: &str, text: &str) -> Result<Poly> {
        free.parse(text).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::Parse {
                line: 0,
                column,
                message: format!("in {what} `{text}`: {message}"),
            },
            other => other,
        })
    }

    /// Expands the presentation. The top degree is `max_degree`, else the
    /// orientation degree.
    pub fn build(&self) -> Result<PresentedAlgebra> {
        let free = FreeAlgebra::new(&self.generators)?;
        let bound = match (self.max_degree, &self.orientation) {
            (Some(b), _) => b,
            (None, Some(o)) => o.degree,
            (None, None) => {
                return Err(Error::Invalid(
                    "a presentation needs `max_degree` or an orientation".into(),
                ))
            }
        };
        let mut d_gens = vec![Poly::default(); free.rank()];
        for (name, text) in &self.differentials {
            let i = free
                .index(name)
                .ok_or_else(|| Error::Invalid(format!("differential of unknown generator `{name}`")))?;
            let p = self.parse_field(&free, "differential", text)?;
            if let Some(deg) = p.homogeneous_degree(&free)? {
                if deg != free.degrees[i] + 1 {
                    return Err(Error::Invalid(format!(
                        "d({name}) has degree {deg}, expected {}",
                        free.degrees[i] + 1
                    )));
                }
            }
            d_gens[i] = p;
        }
        let mut relations = Vec::new();
        for text in &self.relations {
            let p = self.parse_field(&free, "relation", text)?;
            p.homogeneous_degree(&free)
                .map_err(|_| Error::Invalid(format!("relation `{text}` is not homogeneous")))?;
            relations.push(p);
        }

        // Nonvanishing somewhere in (bound, bound + top generator degree]
        // is the only way the quotient can be nonzero above the bound.
        let reach = bound + free.degrees.iter().copied().max().unwrap_or(0);
        let (ambient, monomials) = truncated_free(&free, &d_gens, reach)?;
        let ambient = Arc::new(ambient);
        let mut ideal = ideal_span(&free, &relations, &monomials, reach);
        let probe = Quotient::new(ambient.space(), &ideal)?;
        if let Some(&i) = probe
            .representatives()
            .iter()
            .find(|&&i| ambient.degree(i) > bound)
        {
            if !self.truncate {
                return Err(Error::Invalid(format!(
                    "the quotient is nonzero above degree {bound} (e.g. {}); raise max_degree or set truncate",
                    ambient.space().name(i)
                )));
            }
        }
        ideal.extend(
            (0..ambient.dim())
                .filter(|&i| ambient.degree(i) > bound)
                .map(Vector::basis),
        );
        let (algebra, projection, cosets) = ambient.quotient(&ideal).map_err(|e| match e {
            Error::NotAnIdeal(m) => Error::NotAnIdeal(format!("relations are not closed under d: {m}")),
            other => other,
        })?;
        let algebra = Arc::new((*algebra).clone().checked()?);
        Ok(PresentedAlgebra {
            presentation: self.clone(),
            free,
            algebra,
            ambient,
            projection,
            cosets,
            monomials,
        })
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Graded dimensions, up to `bound`, of the free graded-commutative
/// algebra on `generators` modulo `relations`.
pub fn presented_dimensions(generators: &[Generator], relations: &[String], bound: i32) -> Result<BTreeMap<i32, usize>> {
    let free = FreeAlgebra::new(generators)?;
    let rels = relations
        .iter()
        .map(|r| free.parse(r))
        .collect::<Result<Vec<_>>>()?;
    let monomials = free.monomials(bound);
    let space = GradedSpace::new(
        monomials
            .iter()
            .map(|m| (free.monomial_name(m), free.degree(m)))
            .collect(),
    )?;
    let q = Quotient::new(&space, &ideal_span(&free, &rels, &monomials, bound))?;
    Ok(q.space().dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn gens(pairs: &[(&str, i32)]) -> Vec<Generator> {
        pairs.iter()
            .map(|&(name, degree)| Generator { name: name.into(), degree })
            .collect()
    }

    #[test]
    fn sphere_presentation() {
        let p = Presentation::from_toml(fixtures::S4).unwrap().build().unwrap();
        assert_eq!(p.algebra.space().names(), &["1", "x"]);
        let pd = p.poincare().unwrap().unwrap();
        assert_eq!(pd.formal_dimension(), 4);
    }

    #[test]
    fn product_of_odd_spheres() {
        let p = fixtures::presented(fixtures::S3_X_S3);
        assert_eq!(p.algebra.space().names(), &["1", "y", "y'", "y*y'"]);
        assert_eq!(p.element("y'*y").unwrap(), -&p.element("y*y'").unwrap());
        assert!(p.poincare().unwrap().is_some());
    }

    #[test]
    fn sphere_two_model_is_not_oriented() {
        let p = fixtures::presented(fixtures::S2_MODEL);
        assert_eq!(p.algebra.dim(), 6);
        assert!(p.poincare().unwrap().is_none());
    }

    #[test]
    fn parser_grammar() {
        let free = FreeAlgebra::new(&gens(&[("x", 2), ("y", 3), ("x'", 2)])).unwrap();
        let p = free.parse("(x + 1/2*x')^2 - 3*x*x'").unwrap();
        let expected = free.parse("x^2 + 1/4*x'^2 - 2*x*x'").unwrap();
        assert_eq!(p, expected);
        assert!(free.parse("y*y").unwrap().is_zero());
        assert_eq!(p.homogeneous_degree(&free).unwrap(), Some(4));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let free = FreeAlgebra::new(&gens(&[("x", 2)])).unwrap();
        assert!(matches!(free.parse("x + z"), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(free.parse("x +"), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(free.parse("(x"), Err(Error::Parse { .. })));
        assert!(matches!(free.parse("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(free.parse("x x"), Err(Error::Parse { column: 3, .. })));
        let err = Presentation::from_toml("generators = [\n  { name = \"x\", degree = \"four\" }\n]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn build_errors() {
        let base = "[[generators]]\nname = \"x\"\ndegree = 2\n[[generators]]\nname = \"y\"\ndegree = 3\n";
        let inhomogeneous = format!("relations = [\"x + y\"]\nmax_degree = 6\n{base}");
        let err = Presentation::from_toml(&inhomogeneous).unwrap().build().unwrap_err();
        assert!(err.to_string().contains("not homogeneous"));

        let infinite = format!("max_degree = 6\n{base}");
        let err = Presentation::from_toml(&infinite).unwrap().build().unwrap_err();
        assert!(err.to_string().contains("nonzero above degree 6"));

        let wrong = format!("max_degree = 6\nrelations = [\"x^2\"]\n{base}[differentials]\ny = \"x\"\n");
        let err = Presentation::from_toml(&wrong).unwrap().build().unwrap_err();
        assert!(err.to_string().contains("expected 4"));

        let not_closed = format!("max_degree = 6\nrelations = [\"x^2\"]\n{base}[differentials]\ny = \"x^2\"\n");
        assert!(Presentation::from_toml(&not_closed).unwrap().build().is_ok());
        let not_closed = format!("max_degree = 6\nrelations = [\"y\", \"x^4\"]\n{base}[differentials]\ny = \"x^2\"\n");
        let err = Presentation::from_toml(&not_closed).unwrap().build().unwrap_err();
        assert!(matches!(err, Error::NotAnIdeal(_)), "{err:?}");
    }

    #[test]
    fn reserialized_presentation_gives_the_same_algebra() {
        for text in [fixtures::S4, fixtures::S3_X_S3, fixtures::S2_MODEL, fixtures::S4_X_S4] {
            let p = Presentation::from_toml(text).unwrap();
            let again = Presentation::from_toml(&p.to_toml()).unwrap();
            assert_eq!(p, again);
            assert_eq!(*p.build().unwrap().algebra, *again.build().unwrap().algebra);
        }
    }

    #[test]
    fn presented_dimensions_of_the_trivial_bundle_ring() {
        let g = gens(&[("x", 4), ("x'", 4), ("u", 7)]);
        let rels: Vec<String> = ["x^2", "x'^2", "u*x - u*x'"].iter().map(|s| s.to_string()).collect();
        let dims = presented_dimensions(&g, &rels, 15).unwrap();
        let nonzero: BTreeMap<i32, usize> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        assert_eq!(nonzero, [(0, 1), (4, 2), (7, 1), (8, 1), (11, 1), (15, 0)].into_iter().filter(|(_, d)| *d > 0).collect());
    }
}
