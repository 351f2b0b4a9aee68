//! Genus-g surfaces with punctures: generator names, the surface relator,
//! abelianization of curve words and the standard intersection pairing.
//!
//! Homology coordinates are ordered `(a₁, b₁, a₂, b₂, …)` and the pairing
//! has blocks `[[0, 1], [-1, 0]]`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Letter, Word};
use crate::lattice::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("generator `{0}` is not a generator of this surface")]
    ForeignGenerator(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("expected {expected} {what} names, got {got}")]
    NameCount { what: &'static str, expected: usize, got: usize },
}

/// Ordering of the letters in the relator coming from the 2-cell of the
/// punctured surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatorConvention {
    /// `[a₁,b₁]⋯[a_g,b_g] · x₁⋯x_p`
    #[default]
    Standard,
    /// Base point at the corner of the square with whiskers to the
    /// punctures: `a₁ · x_p⋯x₂ · b₁ a₁⁻¹ b₁⁻¹ · [a₂,b₂]⋯ · x₁⁻¹`. For
    /// genus one with two punctures named `x`, `y` this is
    /// `a y b a⁻¹ b⁻¹ x⁻¹`.
    CornerWhiskers,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    genus: usize,
    punctures: usize,
    convention: RelatorConvention,
    handles: Vec<(String, String)>,
    meridians: Vec<String>,
}

impl SurfaceModel {
    /// Default names `a1, b1, …, x1, …`.
    pub fn new(genus: usize, punctures: usize) -> Self {
        SurfaceModel {
            genus,
            punctures,
            convention: RelatorConvention::Standard,
            handles: (1..=genus).map(|i| (format!("a{i}"), format!("b{i}"))).collect(),
            meridians: (1..=punctures).map(|j| format!("x{j}")).collect(),
        }
    }

    pub fn with_names(handles: Vec<(String, String)>, meridians: Vec<String>) -> Result<Self, SurfaceError> {
        let mut seen = std::collections::BTreeSet::new();
        for n in handles.iter().flat_map(|(a, b)| [a, b]).chain(meridians.iter()) {
            if !seen.insert(n.clone()) {
                return Err(SurfaceError::DuplicateName(n.clone()));
            }
        }
        Ok(SurfaceModel {
            genus: handles.len(),
            punctures: meridians.len(),
            convention: RelatorConvention::Standard,
            handles,
            meridians,
        })
    }

    pub fn with_convention(mut self, convention: RelatorConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn convention(&self) -> RelatorConvention {
        self.convention
    }

    pub fn handle_names(&self) -> &[(String, String)] {
        &self.handles
    }

    pub fn meridian_names(&self) -> &[String] {
        &self.meridians
    }

    /// All generators: handle pairs first, then meridians.
    pub fn generators(&self) -> Vec<String> {
        self.handles.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).chain(self.meridians.iter().cloned()).collect()
    }

    pub fn is_meridian(&self, generator: &str) -> bool {
        self.meridians.iter().any(|m| m == generator)
    }

    /// Index of a handle generator in the homology basis.
    pub fn handle_coordinate(&self, generator: &str) -> Option<usize> {
        self.handles.iter().enumerate().find_map(|(i, (a, b))| {
            if a == generator {
                Some(2 * i)
            } else if b == generator {
                Some(2 * i + 1)
            } else {
                None
            }
        })
    }

    pub fn check_word(&self, w: &Word) -> Result<(), SurfaceError> {
        for g in w.generators() {
            if self.handle_coordinate(g).is_none() && !self.is_meridian(g) {
                return Err(SurfaceError::ForeignGenerator(g.to_string()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub genus: usize,
    pub punctures: usize,
}

pub fn euler_characteristic(m: &SurfaceModel) -> i64 {
    2 - 2 * m.genus as i64 - m.punctures as i64
}

/// The relator of the single 2-cell of the punctured surface.
pub fn surface_relator(m: &SurfaceModel) -> Word {
    let gen = |n: &str, inv: bool| Letter::new(n, inv);
    let commutator = |(a, b): &(String, String)| [gen(a, false), gen(b, false), gen(a, true), gen(b, true)];
    let mut letters = Vec::new();
    match m.convention {
        RelatorConvention::Standard => {
            letters.extend(m.handles.iter().flat_map(commutator));
            letters.extend(m.meridians.iter().map(|x| gen(x, false)));
        }
        RelatorConvention::CornerWhiskers => {
            let later_meridians = m.meridians.iter().skip(1).rev().map(|x| gen(x, false));
            match m.handles.split_first() {
                Some(((a, b), rest)) => {
                    letters.push(gen(a, false));
                    letters.extend(later_meridians);
                    letters.extend([gen(b, false), gen(a, true), gen(b, true)]);
                    letters.extend(rest.iter().flat_map(commutator));
                }
                None => letters.extend(later_meridians),
            }
            if let Some(x1) = m.meridians.first() {
                letters.push(gen(x1, true));
            }
        }
    }
    Word::from_letters(letters)
}

/// Class in `H₁` of the closed surface: exponent sums of handle generators.
/// Meridians bound disks once the punctures are filled, so they drop out.
pub fn abelianize(m: &SurfaceModel, w: &Word) -> Result<CurveClass, SurfaceError> {
    m.check_word(w)?;
    let mut coords = vec![BigInt::zero(); 2 * m.genus];
    for l in w.letters() {
        if let Some(i) = m.handle_coordinate(&l.generator) {
            coords[i] += l.exponent();
        }
    }
    Ok(CurveClass::new(coords))
}

/// A homology class in `ℤ^{2g}`.
/// Serialized as a JSON array of integers; entries outside the `i64` range
/// are written as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    coords: Vec<BigInt>,
}

impl CurveClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        CurveClass { coords }
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        CurveClass { coords: xs.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn zero(genus: usize) -> Self {
        CurveClass { coords: vec![BigInt::zero(); 2 * genus] }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    /// Half the coordinate length.
    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> CurveClass {
        CurveClass { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Serialize for CurveClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CurveClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Int(i64),
            Text(String),
        }
        let entries = Vec::<Entry>::deserialize(deserializer)?;
        let coords = entries
            .into_iter()
            .map(|e| match e {
                Entry::Int(v) => Ok(BigInt::from(v)),
                Entry::Text(t) => t.trim().parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<Result<_, _>>()?;
        Ok(CurveClass { coords })
    }
}

/// `c1ᵀ J c2` with the standard block form.
pub fn intersection_number(c1: &CurveClass, c2: &CurveClass) -> Result<BigInt, SurfaceError> {
    if c1.coords.len() != c2.coords.len() {
        return Err(SurfaceError::GenusMismatch(c1.genus(), c2.genus()));
    }
    let mut acc = BigInt::zero();
    for i in 0..c1.genus() {
        acc += &c1.coords[2 * i] * &c2.coords[2 * i + 1];
        acc -= &c1.coords[2 * i + 1] * &c2.coords[2 * i];
    }
    Ok(acc)
}

/// The standard skew form `J` of genus `g`.
pub fn standard_form(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j[(2 * i, 2 * i + 1)] = BigInt::from(1);
        j[(2 * i + 1, 2 * i)] = BigInt::from(-1);
    }
    j
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("form is not square and skew-symmetric")]
    NotSkew,
    #[error("form is degenerate or not unimodular")]
    NotUnimodular,
}

/// A unimodular change of basis `P` (columns are the new basis vectors in
/// old coordinates) with `Pᵀ · form · P = J`.
///
/// Runs integer symplectic Gram–Schmidt: take the first remaining vector
/// `u`, Euclid-reduce the others until exactly one pairs with `u` (to ±1),
/// then project the rest onto the symplectic complement. A form that is
/// already standard yields the identity.
pub fn symplectic_basis(form: &IntMatrix) -> Result<IntMatrix, FormError> {
    let n = form.rows();
    if form.cols() != n || !n.is_multiple_of(2) || *form != skew_transpose(form) {
        return Err(FormError::NotSkew);
    }
    let pair = |x: &[BigInt], y: &[BigInt]| -> BigInt {
        let fy = form.mul_vec(y).expect("dimension");
        x.iter().zip(&fy).map(|(a, b)| a * b).sum()
    };
    let mut remaining: Vec<Vec<BigInt>> = form_identity_columns(n);
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let u = remaining.remove(0);
        loop {
            let vals: Vec<BigInt> = remaining.iter().map(|w| pair(&u, w)).collect();
            let nonzero: Vec<usize> = (0..vals.len()).filter(|&k| !vals[k].is_zero()).collect();
            if nonzero.is_empty() {
                return Err(FormError::NotUnimodular);
            }
            let piv = *nonzero.iter().min_by_key(|&&k| vals[k].magnitude().clone()).expect("nonempty");
            if nonzero.len() == 1 {
                if vals[piv].magnitude() != &num_bigint::BigUint::from(1u8) {
                    return Err(FormError::NotUnimodular);
                }
                break;
            }
            for &k in &nonzero {
                if k == piv {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&vals[k], &vals[piv]);
                let pv = remaining[piv].clone();
                for (x, y) in remaining[k].iter_mut().zip(&pv) {
                    *x -= &q * y;
                }
            }
        }
        let vi = (0..remaining.len()).find(|&k| !pair(&u, &remaining[k]).is_zero()).expect("found above");
        let mut v = remaining.remove(vi);
        if pair(&u, &v) < BigInt::zero() {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        for w in remaining.iter_mut() {
            let wv = pair(w, &v);
            let wu = pair(w, &u);
            for k in 0..n {
                w[k] = &w[k] - &wv * &u[k] + &wu * &v[k];
            }
        }
        out.push(u);
        out.push(v);
    }
    Ok(IntMatrix::from_columns(n, &out).expect("square"))
}

fn skew_transpose(m: &IntMatrix) -> IntMatrix {
    let mut t = m.transpose();
    for i in 0..t.rows() {
        for j in 0..t.cols() {
            let v = -&t[(i, j)];
            t[(i, j)] = v;
        }
    }
    t
}

fn form_identity_columns(n: usize) -> Vec<Vec<BigInt>> {
    IntMatrix::identity(n).columns()
}
