//! Braid words, the braid monodromy of singular events, and desk-scale
//! identification of braid closures.
//!
//! `σᵢ` is the positive half-twist. A tangency contributes `σᵢ`, a positive
//! node `σᵢ²`, a negative node `σᵢ⁻²` and a cusp `σᵢ³`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Permutation;

pub const MAX_IDENTIFY_STRANDS: usize = 6;
pub const MAX_IDENTIFY_LETTERS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator s{index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("cannot parse braid word `{input}`: {reason}")]
    Syntax { input: String, reason: String },
    #[error("braid too large to identify ({strands} strands, {letters} letters; limit {max_strands} strands, {max_letters} letters)")]
    SizeLimit { strands: usize, letters: usize, max_strands: usize, max_letters: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("unknown event kind `{0}`")]
    UnknownEvent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    /// 1-based generator index `i` of `σᵢ`.
    pub index: usize,
    pub positive: bool,
}

impl BraidLetter {
    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(BraidError::IndexOutOfRange { index: l.index, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// `σᵢ^power` in `B_strands`.
    pub fn generator_power(strands: usize, index: usize, power: i64) -> Result<Self, BraidError> {
        let l = BraidLetter { index, positive: power > 0 };
        Self::new(strands, vec![l; power.unsigned_abs() as usize])
    }

    /// Parses `"s1 s2^-1 s1^3"`. Without `strands`, uses one more than the
    /// largest generator index (at least one strand).
    pub fn parse(input: &str, strands: Option<usize>) -> Result<Self, BraidError> {
        let err = |reason: String| BraidError::Syntax { input: input.to_string(), reason };
        let mut letters = Vec::new();
        for tok in input.split_whitespace() {
            let body = tok
                .strip_prefix('s')
                .or_else(|| tok.strip_prefix('σ'))
                .ok_or_else(|| err(format!("`{tok}` is not of the form s<i>")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| err(format!("bad exponent in `{tok}`")))?),
                None => (body, 1),
            };
            let index: usize = idx.parse().map_err(|_| err(format!("bad generator index in `{tok}`")))?;
            for _ in 0..exp.unsigned_abs() {
                letters.push(BraidLetter { index, positive: exp > 0 });
            }
        }
        let needed = letters.iter().map(|l| l.index + 1).max().unwrap_or(1);
        Self::new(strands.unwrap_or(needed), letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        let letters =
            self.letters.iter().rev().map(|l| BraidLetter { index: l.index, positive: !l.positive }).collect();
        BraidWord { strands: self.strands, letters }
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> BraidWord {
        let letters = self.letters.iter().map(|l| BraidLetter { index: l.index, positive: !l.positive }).collect();
        BraidWord { strands: self.strands, letters }
    }
}

/// Serialized as `{"strands": n, "word": "s1^3"}`.
impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("BraidWord", 2)?;
        st.serialize_field("strands", &self.strands)?;
        st.serialize_field("word", &self.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            strands: usize,
            word: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        BraidWord::parse(&raw.word, Some(raw.strands)).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        // Run-length encode equal consecutive letters.
        let mut toks = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let exp = (j - i) as i64 * l.sign();
            toks.push(if exp == 1 { format!("s{}", l.index) } else { format!("s{}^{}", l.index, exp) });
            i = j;
        }
        write!(f, "{}", toks.join(" "))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in B{}", self.strands)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Tangency,
    PositiveNode,
    NegativeNode,
    Cusp,
}

impl EventKind {
    pub fn parse(s: &str) -> Result<Self, BraidError> {
        match s {
            "tangency" => Ok(EventKind::Tangency),
            "positive_node" => Ok(EventKind::PositiveNode),
            "negative_node" => Ok(EventKind::NegativeNode),
            "cusp" => Ok(EventKind::Cusp),
            other => Err(BraidError::UnknownEvent(other.to_string())),
        }
    }

    /// Signed power of `σᵢ` the event contributes.
    pub fn power(self) -> i64 {
        match self {
            EventKind::Tangency => 1,
            EventKind::PositiveNode => 2,
            EventKind::NegativeNode => -2,
            EventKind::Cusp => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularEvent {
    pub kind: EventKind,
    /// 1-based generator index.
    pub at: usize,
}

/// The local braid of an event, in the smallest braid group containing it.
pub fn event_to_braid(e: SingularEvent) -> BraidWord {
    BraidWord::generator_power(e.at + 1, e.at, e.kind.power()).expect("index is below strand count")
}

fn event_in(e: SingularEvent, strands: usize) -> Result<BraidWord, BraidError> {
    BraidWord::generator_power(strands, e.at, e.kind.power())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonodromyPiece {
    Segment(BraidWord),
    Event(SingularEvent),
}

/// A braided surface, recorded as its movie: braid segments interleaved
/// with singular events, one event per slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidedSurfaceDescriptor {
    strands: usize,
    sequence: Vec<MonodromyPiece>,
}

impl BraidedSurfaceDescriptor {
    pub fn new(strands: usize, sequence: Vec<MonodromyPiece>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for piece in &sequence {
            match piece {
                MonodromyPiece::Segment(w) if w.strands() != strands => {
                    return Err(BraidError::StrandMismatch(strands, w.strands()))
                }
                MonodromyPiece::Event(e) if e.at == 0 || e.at >= strands => {
                    return Err(BraidError::IndexOutOfRange { index: e.at, strands })
                }
                _ => {}
            }
        }
        Ok(BraidedSurfaceDescriptor { strands, sequence })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn sequence(&self) -> &[MonodromyPiece] {
        &self.sequence
    }

    pub fn events(&self) -> impl Iterator<Item = &SingularEvent> {
        self.sequence.iter().filter_map(|p| match p {
            MonodromyPiece::Event(e) => Some(e),
            MonodromyPiece::Segment(_) => None,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    strands: usize,
    sequence: Vec<PieceJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PieceJson {
    Braid { braid: String },
    Event { event: String, at: usize },
}

impl Serialize for BraidedSurfaceDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let sequence = self
            .sequence
            .iter()
            .map(|p| match p {
                MonodromyPiece::Segment(w) => PieceJson::Braid { braid: w.to_string() },
                MonodromyPiece::Event(e) => PieceJson::Event { event: event_name(e.kind).to_string(), at: e.at },
            })
            .collect();
        DescriptorJson { strands: self.strands, sequence }.serialize(s)
    }
}

fn event_name(k: EventKind) -> &'static str {
    match k {
        EventKind::Tangency => "tangency",
        EventKind::PositiveNode => "positive_node",
        EventKind::NegativeNode => "negative_node",
        EventKind::Cusp => "cusp",
    }
}

impl<'de> Deserialize<'de> for BraidedSurfaceDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DescriptorJson::deserialize(d)?;
        let mut seq = Vec::new();
        for p in raw.sequence {
            seq.push(match p {
                PieceJson::Braid { braid } => {
                    MonodromyPiece::Segment(BraidWord::parse(&braid, Some(raw.strands)).map_err(D::Error::custom)?)
                }
                PieceJson::Event { event, at } => MonodromyPiece::Event(SingularEvent {
                    kind: EventKind::parse(&event).map_err(D::Error::custom)?,
                    at,
                }),
            });
        }
        BraidedSurfaceDescriptor::new(raw.strands, seq).map_err(D::Error::custom)
    }
}

/// Concatenation of segments and compiled events in movie order.
pub fn total_monodromy(d: &BraidedSurfaceDescriptor) -> BraidWord {
    let mut letters = Vec::new();
    for piece in &d.sequence {
        match piece {
            MonodromyPiece::Segment(w) => letters.extend_from_slice(w.letters()),
            MonodromyPiece::Event(e) => {
                letters.extend_from_slice(event_in(*e, d.strands).expect("validated").letters())
            }
        }
    }
    BraidWord { strands: d.strands, letters }
}

/// Image under `B_n → S_n`, `σᵢ ↦ (i i+1)`, multiplied left to right.
pub fn underlying_permutation(b: &BraidWord) -> Permutation {
    let mut acc = Permutation::identity(b.strands);
    for l in &b.letters {
        let t = Permutation::transposition(b.strands, l.index, l.index + 1).expect("index validated");
        acc = acc.compose(&t).expect("same degree");
    }
    acc
}

pub fn closure_component_count(b: &BraidWord) -> usize {
    underlying_permutation(b).cycle_count()
}

pub fn exponent_sum(b: &BraidWord) -> i64 {
    b.letters.iter().map(BraidLetter::sign).sum()
}

/// Linking numbers between closure components, keyed by component pair
/// (components indexed by least starting strand, 0-based).
pub fn linking_numbers(b: &BraidWord) -> BTreeMap<(usize, usize), i64> {
    let n = b.strands;
    let perm = underlying_permutation(b);
    let mut component = vec![0; n];
    for (c, cyc) in perm.cycles().iter().enumerate() {
        for &p in cyc {
            component[p] = c;
        }
    }
    // at_position[p] = starting strand currently at position p
    let mut at_position: Vec<usize> = (0..n).collect();
    let mut twice: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for l in &b.letters {
        let (s, t) = (at_position[l.index - 1], at_position[l.index]);
        let (cs, ct) = (component[s], component[t]);
        if cs != ct {
            *twice.entry((cs.min(ct), cs.max(ct))).or_default() += l.sign();
        }
        at_position.swap(l.index - 1, l.index);
    }
    twice.into_iter().map(|(k, v)| (k, v / 2)).collect()
}

/// Laurent polynomial in one variable with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`.
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        LaurentPoly { low: exp, coeffs: vec![BigInt::from(coeff)] }.trimmed()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// From coefficients of `t^low, t^(low+1), ...`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        LaurentPoly { low, coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            return LaurentPoly::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_degree().max(other.high_degree());
        let coeffs = (low..=high).map(|e| self.coeff(e) + other.coeff(e)).collect();
        LaurentPoly { low, coeffs }.trimmed()
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly { low: self.low + other.low, coeffs }.trimmed()
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. The divisor's extreme coefficients must be units.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let lead = divisor.coeffs.last().expect("nonzero");
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while !rem.is_zero() && rem.coeffs.len() >= divisor.coeffs.len() {
            let top = rem.coeffs.last().expect("nonzero");
            if !(top % lead).is_zero() {
                return None;
            }
            let shift = rem.high_degree() - divisor.high_degree();
            let term = LaurentPoly { low: shift, coeffs: vec![top / lead] };
            rem = rem.sub(&term.mul(divisor));
            quotient = quotient.add(&term);
        }
        rem.is_zero().then_some(quotient)
    }

    /// `t ↦ t⁻¹`.
    pub fn invert_variable(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { low: -self.high_degree(), coeffs }.trimmed()
    }

    /// Representative modulo the units `±t^k`: lowest exponent zero and
    /// positive lowest coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let sign = if self.coeffs[0].is_negative() { -BigInt::one() } else { BigInt::one() };
        LaurentPoly { low: 0, coeffs: self.coeffs.iter().map(|c| c * &sign).collect() }
    }

    pub fn equals_up_to_units(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

type PolyMatrix = Vec<Vec<LaurentPoly>>;

fn poly_identity(n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::constant(1) } else { LaurentPoly::zero() }).collect())
        .collect()
}

fn poly_matmul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(LaurentPoly::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

/// Reduced Burau matrix of a single letter in `B_n` (size `n-1`).
pub fn burau_letter(strands: usize, letter: BraidLetter) -> Vec<Vec<LaurentPoly>> {
    let m = strands - 1;
    let mut a = poly_identity(m);
    let i = letter.index - 1; // 0-based row of the generator
    let t = |c: i64, e: i64| LaurentPoly::monomial(c, e);
    if letter.positive {
        a[i][i] = t(-1, 1);
        if i > 0 {
            a[i - 1][i] = t(1, 1);
        }
        if i + 1 < m {
            a[i + 1][i] = t(1, 0);
        }
    } else {
        a[i][i] = t(-1, -1);
        if i > 0 {
            a[i - 1][i] = t(1, 0);
        }
        if i + 1 < m {
            a[i + 1][i] = t(1, -1);
        }
    }
    a
}

/// Reduced Burau image of the whole word, letters multiplied left to right.
pub fn reduced_burau(b: &BraidWord) -> Vec<Vec<LaurentPoly>> {
    let mut acc = poly_identity(b.strands - 1);
    for &l in &b.letters {
        acc = poly_matmul(&acc, &burau_letter(b.strands, l));
    }
    acc
}

/// Determinant by Laplace expansion; matrices here are at most 5×5.
fn poly_det(a: &PolyMatrix) -> LaurentPoly {
    let n = a.len();
    match n {
        0 => LaurentPoly::constant(1),
        1 => a[0][0].clone(),
        _ => {
            let mut acc = LaurentPoly::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: PolyMatrix =
                    (1..n).map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c].clone()).collect()).collect();
                let term = a[0][j].mul(&poly_det(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Alexander polynomial of the closure, `det(I - B̄(b)) / (1 + t + … + t^(n-1))`,
/// normalized up to `±t^k`.
pub fn alexander_polynomial(b: &BraidWord) -> LaurentPoly {
    let burau = reduced_burau(b);
    let m = burau.len();
    let id = poly_identity(m);
    let diff: PolyMatrix = (0..m).map(|i| (0..m).map(|j| id[i][j].sub(&burau[i][j])).collect()).collect();
    let det = poly_det(&diff);
    let divisor = LaurentPoly::from_coeffs(0, &vec![1; b.strands]);
    det.exact_div(&divisor).expect("Burau determinant is divisible by the cyclotomic factor").normalized()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureInvariants {
    pub strands: usize,
    pub components: usize,
    pub exponent_sum: i64,
    pub alexander: LaurentPoly,
    /// Linking number, present for two-component closures.
    pub linking_number: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureTag {
    Unknot,
    HopfLinkPositive,
    HopfLinkNegative,
    TrefoilRight,
    TrefoilLeft,
    Other(ClosureInvariants),
}

impl ClosureTag {
    pub fn name(&self) -> &'static str {
        match self {
            ClosureTag::Unknot => "unknot",
            ClosureTag::HopfLinkPositive => "hopf_link_positive",
            ClosureTag::HopfLinkNegative => "hopf_link_negative",
            ClosureTag::TrefoilRight => "trefoil_right",
            ClosureTag::TrefoilLeft => "trefoil_left",
            ClosureTag::Other(_) => "other",
        }
    }
}

impl fmt::Display for ClosureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn closure_invariants(b: &BraidWord) -> ClosureInvariants {
    let components = closure_component_count(b);
    let linking_number = (components == 2).then(|| linking_numbers(b).values().sum());
    ClosureInvariants {
        strands: b.strands,
        components,
        exponent_sum: exponent_sum(b),
        alexander: alexander_polynomial(b),
        linking_number,
    }
}

/// Classifies the closure from its component count, exponent sum,
/// Alexander polynomial and (for two components) linking number.
///
/// Trefoil chirality uses the Bennequin bound on self-linking: a braid on
/// `n` strands closing to the left trefoil has `e - n ≤ -5`, so a right
/// trefoil has `e ≥ 5 - n`. When both bounds admit `e` the answer is
/// `Other`.
pub fn identify_closure(b: &BraidWord) -> Result<ClosureTag, BraidError> {
    if b.strands > MAX_IDENTIFY_STRANDS || b.len() > MAX_IDENTIFY_LETTERS {
        return Err(BraidError::SizeLimit {
            strands: b.strands,
            letters: b.len(),
            max_strands: MAX_IDENTIFY_STRANDS,
            max_letters: MAX_IDENTIFY_LETTERS,
        });
    }
    let inv = closure_invariants(b);
    let one = LaurentPoly::constant(1);
    let trefoil = LaurentPoly::from_coeffs(0, &[1, -1, 1]);
    let hopf = LaurentPoly::from_coeffs(0, &[1, -1]);
    let n = b.strands as i64;
    let e = inv.exponent_sum;
    let tag = match inv.components {
        1 if inv.alexander == one => ClosureTag::Unknot,
        1 if inv.alexander == trefoil => {
            let maybe_right = e >= 5 - n;
            let maybe_left = e <= n - 5;
            match (maybe_right, maybe_left) {
                (true, false) => ClosureTag::TrefoilRight,
                (false, true) => ClosureTag::TrefoilLeft,
                _ => ClosureTag::Other(inv),
            }
        }
        2 if inv.alexander == hopf && inv.linking_number == Some(1) => ClosureTag::HopfLinkPositive,
        2 if inv.alexander == hopf && inv.linking_number == Some(-1) => ClosureTag::HopfLinkNegative,
        _ => ClosureTag::Other(inv),
    };
    Ok(tag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(s: &str) -> BraidWord {
        BraidWord::parse(s, None).unwrap()
    }

    #[test]
    fn event_examples() {
        let cusp = event_to_braid(SingularEvent { kind: EventKind::Cusp, at: 1 });
        assert_eq!(cusp, bw("s1^3"));
        assert_eq!(event_to_braid(SingularEvent { kind: EventKind::Tangency, at: 1 }), bw("s1"));
        let neg = event_to_braid(SingularEvent { kind: EventKind::NegativeNode, at: 2 });
        assert_eq!(neg, BraidWord::parse("s2^-2", Some(3)).unwrap());
        for (kind, e) in [
            (EventKind::Tangency, 1),
            (EventKind::PositiveNode, 2),
            (EventKind::NegativeNode, -2),
            (EventKind::Cusp, 3),
        ] {
            let w = event_to_braid(SingularEvent { kind, at: 1 });
            assert_eq!(exponent_sum(&w), e);
            assert_eq!(w.letters().iter().all(|l| l.positive), kind != EventKind::NegativeNode);
        }
    }

    #[test]
    fn monodromy_examples() {
        let seg = bw("s1 s2^-1");
        let d = BraidedSurfaceDescriptor::new(3, vec![MonodromyPiece::Segment(seg.clone())]).unwrap();
        assert_eq!(total_monodromy(&d), seg);
        let cusp = SingularEvent { kind: EventKind::Cusp, at: 1 };
        let d = BraidedSurfaceDescriptor::new(2, vec![MonodromyPiece::Event(cusp)]).unwrap();
        assert_eq!(total_monodromy(&d), bw("s1^3"));
        let tan = SingularEvent { kind: EventKind::Tangency, at: 1 };
        let d = BraidedSurfaceDescriptor::new(2, vec![MonodromyPiece::Event(tan), MonodromyPiece::Event(tan)]).unwrap();
        let by_hand = event_to_braid(tan).concat(&event_to_braid(tan)).unwrap();
        assert_eq!(total_monodromy(&d), by_hand);
        assert_eq!(by_hand, bw("s1^2"));
        let bad = SingularEvent { kind: EventKind::Cusp, at: 2 };
        assert!(BraidedSurfaceDescriptor::new(2, vec![MonodromyPiece::Event(bad)]).is_err());
    }

    #[test]
    fn descriptor_json() {
        let json = r#"{"strands": 3, "sequence": [{"braid": "s1 s2^-1"}, {"event": "cusp", "at": 2}]}"#;
        let d: BraidedSurfaceDescriptor = serde_json::from_str(json).unwrap();
        assert_eq!(total_monodromy(&d), BraidWord::parse("s1 s2^-1 s2^3", Some(3)).unwrap());
        let back: BraidedSurfaceDescriptor = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<BraidedSurfaceDescriptor>(
            r#"{"strands": 2, "sequence": [{"event": "swallowtail", "at": 1}]}"#
        )
        .is_err());
    }

    #[test]
    fn permutation_and_components() {
        assert_eq!(underlying_permutation(&bw("s1")).to_string(), "(1 2)");
        assert_eq!(underlying_permutation(&bw("s1^3")).to_string(), "(1 2)");
        assert_eq!(underlying_permutation(&bw("s1 s2")).cycle_structure(), vec![3]);
        assert_eq!(closure_component_count(&bw("s1^2")), 2);
        assert_eq!(closure_component_count(&bw("s1^3")), 1);
        assert_eq!(closure_component_count(&BraidWord::identity(3).unwrap()), 3);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(exponent_sum(&bw("s1^3")), 3);
        assert_eq!(exponent_sum(&bw("s1 s2^-1")), 0);
        let d = BraidedSurfaceDescriptor::new(
            3,
            vec![
                MonodromyPiece::Event(SingularEvent { kind: EventKind::PositiveNode, at: 1 }),
                MonodromyPiece::Event(SingularEvent { kind: EventKind::NegativeNode, at: 2 }),
            ],
        )
        .unwrap();
        assert_eq!(exponent_sum(&total_monodromy(&d)), 0);
    }

    #[test]
    fn identify_examples() {
        assert_eq!(identify_closure(&bw("s1")).unwrap(), ClosureTag::Unknot);
        assert_eq!(identify_closure(&bw("s1^2")).unwrap(), ClosureTag::HopfLinkPositive);
        assert_eq!(identify_closure(&bw("s1^-2")).unwrap(), ClosureTag::HopfLinkNegative);
        assert_eq!(identify_closure(&bw("s1^3")).unwrap(), ClosureTag::TrefoilRight);
        assert_eq!(identify_closure(&bw("s1^-3")).unwrap(), ClosureTag::TrefoilLeft);
        assert_eq!(identify_closure(&bw("s1 s2")).unwrap(), ClosureTag::Unknot);
        assert_eq!(identify_closure(&bw("s1 s2 s1 s2")).unwrap(), ClosureTag::TrefoilRight);
        assert_eq!(identify_closure(&BraidWord::identity(1).unwrap()).unwrap(), ClosureTag::Unknot);
        // figure eight
        match identify_closure(&bw("s1 s2^-1 s1 s2^-1")).unwrap() {
            ClosureTag::Other(inv) => assert_eq!(inv.alexander, LaurentPoly::from_coeffs(0, &[1, -3, 1])),
            t => panic!("unexpected {t}"),
        }
        assert!(matches!(identify_closure(&bw("s6")), Err(BraidError::SizeLimit { .. })));
        assert!(matches!(identify_closure(&bw("s1^25")), Err(BraidError::SizeLimit { .. })));
    }

    /// Seifert matrix of the standard diagram of the closure of σ₁³: two
    /// Seifert circles joined by three bands give a genus-one surface with
    /// V = [[-1, 1], [0, -1]] and Δ = det(V - tVᵀ) = t² - t + 1.
    #[test]
    fn trefoil_alexander_matches_seifert_matrix() {
        let v = [[-1i64, 1], [0, -1]];
        // det(V - t Vᵀ) expanded by hand over ℤ[t]
        let a = LaurentPoly::from_coeffs(0, &[v[0][0], -v[0][0]]);
        let b = LaurentPoly::from_coeffs(0, &[v[0][1], -v[1][0]]);
        let c = LaurentPoly::from_coeffs(0, &[v[1][0], -v[0][1]]);
        let d = LaurentPoly::from_coeffs(0, &[v[1][1], -v[1][1]]);
        let seifert = a.mul(&d).sub(&b.mul(&c));
        assert!(seifert.equals_up_to_units(&alexander_polynomial(&bw("s1^3"))));
        assert_eq!(alexander_polynomial(&bw("s1^3")).to_string(), "1 - t + t^2");
    }

    #[test]
    fn burau_inverse_and_braid_relation() {
        for n in 2..=5 {
            for i in 1..n {
                let p = burau_letter(n, BraidLetter { index: i, positive: true });
                let q = burau_letter(n, BraidLetter { index: i, positive: false });
                assert_eq!(poly_matmul(&p, &q), poly_identity(n - 1));
            }
        }
        let l = BraidWord::parse("s1 s2 s1", Some(4)).unwrap();
        let r = BraidWord::parse("s2 s1 s2", Some(4)).unwrap();
        assert_eq!(reduced_burau(&l), reduced_burau(&r));
        let far1 = BraidWord::parse("s1 s3", Some(4)).unwrap();
        let far2 = BraidWord::parse("s3 s1", Some(4)).unwrap();
        assert_eq!(reduced_burau(&far1), reduced_burau(&far2));
    }

    #[test]
    fn laurent_division() {
        let p = LaurentPoly::from_coeffs(0, &[1, 0, 0, 1]);
        let q = LaurentPoly::from_coeffs(0, &[1, 1]);
        assert_eq!(p.exact_div(&q).unwrap(), LaurentPoly::from_coeffs(0, &[1, -1, 1]));
        assert!(LaurentPoly::from_coeffs(0, &[1, 0, 1]).exact_div(&q).is_none());
        assert_eq!(LaurentPoly::from_coeffs(-2, &[-1, 1]).normalized(), LaurentPoly::from_coeffs(0, &[1, -1]));
    }

    #[test]
    fn parse_errors() {
        assert!(BraidWord::parse("x1", None).is_err());
        assert!(BraidWord::parse("s0", None).is_err());
        assert!(BraidWord::parse("s3", Some(3)).is_err());
        assert_eq!(bw("s1^0").len(), 0);
        assert_eq!(bw("s2 s2 s1^-1").to_string(), "s2^2 s1^-1");
    }
}
