//! Permutations, free-group words, finite presentations and permutation
//! representations.
//!
//! Points are 1-indexed at every I/O boundary and 0-indexed internally.
//! Permutations act on the left: `p.compose(&q)` is `p ∘ q`, i.e. apply `q`
//! first. Words evaluate left to right as written, so
//! `evaluate(uv) = evaluate(u) ∘ evaluate(v)`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("not a permutation: {0}")]
    NotBijective(String),
    #[error("cannot parse permutation `{input}`: {reason}")]
    PermutationSyntax { input: String, reason: String },
    #[error("cannot parse word `{input}`: {reason}")]
    WordSyntax { input: String, reason: String },
    #[error("degree must be positive")]
    ZeroDegree,
}

/// A bijection of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(AlgebraError::NotBijective(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `degree` from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cyc in cycles {
            for &pt in cyc {
                if pt == 0 || pt > degree {
                    return Err(AlgebraError::NotBijective(format!("point {pt} outside 1..{degree}")));
                }
                if used[pt - 1] {
                    return Err(AlgebraError::NotBijective(format!("point {pt} repeated")));
                }
                used[pt - 1] = true;
            }
            for k in 0..cyc.len() {
                images[cyc[k] - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition `(i j)` on 1-based points.
    pub fn transposition(degree: usize, i: usize, j: usize) -> Result<Self, AlgebraError> {
        Self::from_cycles(degree, &[vec![i, j]])
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"`. `"()"` or `""` is the identity.
    pub fn parse(input: &str, degree: usize) -> Result<Self, AlgebraError> {
        let err =
            |reason: &str| AlgebraError::PermutationSyntax { input: input.to_string(), reason: reason.to_string() };
        let mut cycles = Vec::new();
        let mut rest = input.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err("expected `(`"));
            }
            let close = rest.find(')').ok_or_else(|| err("unbalanced parenthesis"))?;
            let body = &rest[1..close];
            let pts = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| err("bad point")))
                .collect::<Result<Vec<_>, _>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = rest[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles).map_err(|e| err(&e.to_string()))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, AlgebraError> {
        if self.degree() != other.degree() {
            return Err(AlgebraError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles as 0-based point lists, each starting at its least
    /// point, ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.images[cur];
            }
            out.push(cyc);
        }
        out
    }

    /// Multiset of cycle lengths, sorted descending; fixed points count as 1.
    pub fn cycle_structure(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_transposition(&self) -> bool {
        let shape = self.cycle_structure();
        shape.first() == Some(&2) && shape[1..].iter().all(|&l| l == 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in S{}", self.degree())
    }
}

/// Orbit partition of `{1..n}` (0-based internally) under the group
/// generated by `gens`. Blocks are sorted and listed by least element.
pub fn orbits(gens: &[Permutation], degree: usize) -> Result<Vec<Vec<usize>>, AlgebraError> {
    for g in gens {
        if g.degree() != degree {
            return Err(AlgebraError::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut block = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if block[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        block[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = g.apply(p);
                if block[q] == usize::MAX {
                    block[q] = id;
                    members.push(q);
                    queue.push_back(q);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    Ok(out)
}

/// Order of the subgroup generated by `gens`, by closure. `None` when the
/// group exceeds `limit` elements.
pub fn group_order(gens: &[Permutation], degree: usize, limit: usize) -> Option<usize> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p).ok()?;
            if seen.insert(q.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(q);
            }
        }
    }
    Some(seen.len())
}

/// One letter of a free-group word: a generator raised to ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: impl Into<String>, inverse: bool) -> Self {
        Letter { generator: generator.into(), inverse }
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter { generator: self.generator.clone(), inverse: !self.inverse }
    }
}

/// A word in a free group, stored letter by letter (not necessarily reduced).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn generator(name: &str) -> Self {
        Word { letters: vec![Letter::new(name, false)] }
    }

    /// Parses whitespace-separated letters, each `g`, `g^-1` or `g^k`.
    /// The strings `""` and `"1"` denote the empty word.
    pub fn parse(input: &str) -> Result<Self, AlgebraError> {
        let err = |reason: String| AlgebraError::WordSyntax { input: input.to_string(), reason };
        let mut letters = Vec::new();
        let trimmed = input.trim();
        if trimmed == "1" {
            return Ok(Word::empty());
        }
        for tok in trimmed.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| err(format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(err(format!("bad generator name `{name}`")));
            }
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(name, exp < 0));
            }
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inverted).collect() }
    }

    pub fn generators(&self) -> BTreeSet<&str> {
        self.letters.iter().map(|l| l.generator.as_str()).collect()
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, generator: &str) -> i64 {
        self.letters.iter().filter(|l| l.generator == generator).map(Letter::exponent).sum()
    }

    /// Replaces each generator found in `map` by its image word.
    pub fn substitute(&self, map: &BTreeMap<String, Word>) -> Word {
        let mut letters = Vec::new();
        for l in &self.letters {
            match map.get(&l.generator) {
                Some(w) if l.inverse => letters.extend(w.inverse().letters),
                Some(w) => letters.extend(w.letters.iter().cloned()),
                None => letters.push(l.clone()),
            }
        }
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.inverse { format!("{}^-1", l.generator) } else { l.generator.clone() })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for l in w.letters() {
        match stack.last() {
            Some(top) if top.generator == l.generator && top.inverse != l.inverse => {
                stack.pop();
            }
            _ => stack.push(l.clone()),
        }
    }
    Word { letters: stack }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, AlgebraError> {
        for r in &relators {
            for g in r.generators() {
                if !generators.iter().any(|x| x == g) {
                    return Err(AlgebraError::UnknownGenerator(g.to_string()));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// An assignment of generators to permutations of a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    degree: usize,
    images: BTreeMap<String, Permutation>,
}

impl Representation {
    pub fn new(degree: usize, images: BTreeMap<String, Permutation>) -> Result<Self, AlgebraError> {
        if degree == 0 {
            return Err(AlgebraError::ZeroDegree);
        }
        for p in images.values() {
            if p.degree() != degree {
                return Err(AlgebraError::DegreeMismatch(degree, p.degree()));
            }
        }
        Ok(Representation { degree, images })
    }

    /// Builds a representation from cycle-notation strings.
    pub fn from_cycle_strings<'a, I>(degree: usize, pairs: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut images = BTreeMap::new();
        for (g, p) in pairs {
            images.insert(g.to_string(), Permutation::parse(p, degree)?);
        }
        Self::new(degree, images)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image(&self, generator: &str) -> Result<&Permutation, AlgebraError> {
        self.images.get(generator).ok_or_else(|| AlgebraError::UnknownGenerator(generator.to_string()))
    }

    pub fn images(&self) -> &BTreeMap<String, Permutation> {
        &self.images
    }

    /// Orbits of the image subgroup, 0-based.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let gens: Vec<Permutation> = self.images.values().cloned().collect();
        orbits(&gens, self.degree).expect("degrees checked on construction")
    }
}

/// Evaluates `w` under `rep` as the product of letter images, left to right.
pub fn evaluate(w: &Word, rep: &Representation) -> Result<Permutation, AlgebraError> {
    let mut acc = Permutation::identity(rep.degree());
    for l in w.letters() {
        let p = rep.image(&l.generator)?;
        let p = if l.inverse { p.inverse() } else { p.clone() };
        acc = acc.compose(&p)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedRelator {
    pub index: usize,
    pub relator: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationReport {
    pub passed: bool,
    pub failing_relators: Vec<FailedRelator>,
    pub transitive: bool,
    /// Order of the image subgroup, if it is at most `IMAGE_ORDER_LIMIT`.
    pub image_order: Option<usize>,
    pub orbit_count: usize,
}

pub const IMAGE_ORDER_LIMIT: usize = 1 << 20;

/// Checks that every relator maps to the identity and reports transitivity
/// of the image.
pub fn verify_representation(pres: &Presentation, rep: &Representation) -> Result<RepresentationReport, AlgebraError> {
    for g in pres.generators() {
        rep.image(g)?;
    }
    let mut failing = Vec::new();
    for (index, r) in pres.relators().iter().enumerate() {
        let img = evaluate(r, rep)?;
        if !img.is_identity() {
            failing.push(FailedRelator { index, relator: r.to_string(), image: img.to_string() });
        }
    }
    let gens: Vec<Permutation> = pres.generators().iter().map(|g| rep.image(g).cloned()).collect::<Result<_, _>>()?;
    let orbit_count = orbits(&gens, rep.degree())?.len();
    Ok(RepresentationReport {
        passed: failing.is_empty(),
        failing_relators: failing,
        transitive: orbit_count == 1,
        image_order: group_order(&gens, rep.degree(), IMAGE_ORDER_LIMIT),
        orbit_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn rho() -> Representation {
        Representation::from_cycle_strings(3, [("a", "()"), ("b", "(2 3)"), ("x", "(1 2)"), ("y", "(1 2)")]).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert!(p("(1 2)", 3).compose(&p("(1 2)", 3)).unwrap().is_identity());
        assert_eq!(p("(1 2)", 3).compose(&p("(2 3)", 3)).unwrap(), p("(1 2 3)", 3));
        let (y, b) = (p("(1 2)", 3), p("(2 3)", 3));
        let yby = y.compose(&b).unwrap().compose(&y).unwrap();
        let byb = b.compose(&y).unwrap().compose(&b).unwrap();
        assert_eq!(yby, byb);
        assert_eq!(p("(1 2)", 3).compose(&p("(1 2)", 4)), Err(AlgebraError::DegreeMismatch(3, 4)));
    }

    #[test]
    fn cycle_structure_examples() {
        assert_eq!(Permutation::identity(3).cycle_structure(), vec![1, 1, 1]);
        assert_eq!(p("(1 2)", 3).cycle_structure(), vec![2, 1]);
        assert_eq!(p("(1 2)(3 4)", 4).cycle_structure(), vec![2, 2]);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(&[p("(1 2)", 4), p("(3 4)", 4)], 4).unwrap(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(orbits(&[p("(1 2)", 3), p("(2 3)", 3)], 3).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(orbits(&[], 3).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert!(orbits(&[p("(1 2)", 2)], 3).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert!(evaluate(&Word::empty(), &rho()).unwrap().is_identity());
        assert!(evaluate(&w("y y b b"), &rho()).unwrap().is_identity());
        assert!(evaluate(&w("a"), &rho()).unwrap().is_identity());
        assert_eq!(evaluate(&w("z"), &rho()), Err(AlgebraError::UnknownGenerator("z".into())));
    }

    #[test]
    fn verify_representation_examples() {
        let pres = Presentation::new(
            vec!["b".into(), "y".into()],
            vec![w("y b y").concat(&w("b y b").inverse()), w("y^2 b^2")],
        )
        .unwrap();
        let report = verify_representation(&pres, &rho()).unwrap();
        assert!(report.passed && report.transitive);
        assert_eq!(report.image_order, Some(6));

        // Brute force over all pairs of transpositions: the braid relator and
        // y²b² hold for every pair; only equal pairs are intransitive.
        let ts = ["(1 2)", "(1 3)", "(2 3)"];
        for ty in ts {
            for tb in ts {
                let rep = Representation::from_cycle_strings(3, [("b", tb), ("y", ty)]).unwrap();
                let r = verify_representation(&pres, &rep).unwrap();
                assert!(r.passed, "{ty} {tb}");
                assert_eq!(r.transitive, ty != tb);
            }
        }

        let trefoil = Presentation::new(vec!["u".into(), "v".into()], vec![w("u v u v^-1 u^-1 v^-1")]).unwrap();
        let rep = Representation::from_cycle_strings(3, [("u", "(1 2)"), ("v", "(2 3)")]).unwrap();
        assert!(verify_representation(&trefoil, &rep).unwrap().passed);
    }

    #[test]
    fn failing_relator_is_reported() {
        let pres = Presentation::new(vec!["u".into()], vec![w("u")]).unwrap();
        let rep = Representation::from_cycle_strings(2, [("u", "(1 2)")]).unwrap();
        let r = verify_representation(&pres, &rep).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failing_relators[0].image, "(1 2)");
    }

    #[test]
    fn free_reduce_examples() {
        assert!(free_reduce(&w("a a^-1")).is_empty());
        assert_eq!(free_reduce(&w("a b b^-1 a")), w("a a"));
        let rel = w("y^-1 a^-1 b^-1 x^-1 b a y b");
        let subst = BTreeMap::from([("a".to_string(), Word::empty()), ("x".to_string(), w("y"))]);
        assert_eq!(free_reduce(&rel.substitute(&subst)), w("y^-1 b^-1 y^-1 b y b"));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("(1 2)(3 4)", 4).to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
        assert!(Permutation::parse("(1 1)", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("1 2", 3).is_err());
        assert_eq!(w("y^-1 b^2").to_string(), "y^-1 b b");
        assert!(Word::parse("y^q").is_err());
        assert!(Word::parse("2x").is_err());
        assert!(Word::parse("1").unwrap().is_empty());
    }
}
