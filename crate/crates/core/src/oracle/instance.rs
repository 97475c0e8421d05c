//! Explicit generators over `F_p` and their canonical JSON form.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialSpace};
use crate::combinatorics::{Bidegree, DegreeList, Shape};
use crate::error::{Error, Result};
use crate::linalg::PrimeField;

/// A bihomogeneous polynomial with nonzero coefficients in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    bidegree: Bidegree,
    terms: Vec<(Monomial, u64)>,
}

impl Form {
    /// Validates exponents against `shape`, merges repeated monomials, drops zeros
    /// and sorts terms into basis order.
    pub fn new(
        shape: Shape,
        field: PrimeField,
        bidegree: Bidegree,
        terms: Vec<(Monomial, u64)>,
    ) -> Result<Self> {
        let (nx, ny) = (shape.n() as usize + 1, shape.m() as usize + 1);
        let mut merged: BTreeMap<_, (Monomial, u64)> = BTreeMap::new();
        for (mono, c) in terms {
            if mono.xexp.len() != nx || mono.yexp.len() != ny {
                return Err(Error::ShapeMismatch(format!(
                    "exponent vectors of lengths ({}, {}) for shape ({}, {})",
                    mono.xexp.len(),
                    mono.yexp.len(),
                    shape.n(),
                    shape.m()
                )));
            }
            if mono.bidegree() != bidegree {
                return Err(Error::ShapeMismatch(format!(
                    "term of bidegree {} in a form of bidegree {}",
                    mono.bidegree(),
                    bidegree
                )));
            }
            let entry = merged.entry(mono.order_key()).or_insert((mono, 0));
            entry.1 = field.add(entry.1, field.reduce(c));
        }
        let terms: Vec<_> = merged.into_values().filter(|(_, c)| *c != 0).collect();
        Ok(Form { bidegree, terms })
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    shape: Shape,
    field: PrimeField,
    forms: Vec<Form>,
}

impl Instance {
    pub fn new(shape: Shape, field: PrimeField, forms: Vec<Form>) -> Result<Self> {
        if let Some(i) = forms.iter().position(Form::is_zero) {
            return Err(Error::ShapeMismatch(format!("form {i} is zero")));
        }
        Ok(Instance { shape, field, forms })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn degrees(&self) -> Result<DegreeList> {
        DegreeList::new(self.forms.iter().map(Form::bidegree).collect())
    }

    /// The common bidegree of all generators, if there is one.
    pub fn common_degree(&self) -> Option<Bidegree> {
        let d = self.forms.first()?.bidegree;
        self.forms.iter().all(|f| f.bidegree == d).then_some(d)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    n: i64,
    m: i64,
    prime: u64,
    forms: Vec<FormJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormJson {
    bidegree: [i64; 2],
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    x: Vec<u32>,
    y: Vec<u32>,
    c: i128,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: InstanceJson = serde_json::from_str(text).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let shape = Shape::new(raw.n, raw.m).map_err(|e| Error::ShapeMismatch(e.to_string()))?;
    let field = PrimeField::new(raw.prime)?;
    let forms = raw
        .forms
        .into_iter()
        .map(|f| {
            let terms = f
                .terms
                .into_iter()
                .map(|t| (Monomial { xexp: t.x, yexp: t.y }, field.from_i128(t.c)))
                .collect();
            Form::new(shape, field, Bidegree::new(f.bidegree[0], f.bidegree[1]), terms)
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(shape, field, forms)
}

/// Canonical compact JSON; `parse_instance` inverts it exactly.
pub fn serialize_instance(inst: &Instance) -> String {
    let raw = InstanceJson {
        n: inst.shape.n() as i64,
        m: inst.shape.m() as i64,
        prime: inst.field.modulus(),
        forms: inst
            .forms
            .iter()
            .map(|f| FormJson {
                bidegree: [f.bidegree.a, f.bidegree.b],
                terms: f
                    .terms
                    .iter()
                    .map(|(mono, c)| TermJson {
                        x: mono.xexp.clone(),
                        y: mono.yexp.clone(),
                        c: *c as i128,
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string(&raw).expect("instance JSON is always serializable")
}

fn dense_form<F: FnMut() -> u64>(
    space: &MonomialSpace,
    field: PrimeField,
    d: Bidegree,
    mut coeff: F,
) -> Result<Form> {
    let piece = space.piece(d).ok_or(Error::InvalidDegree(d))?;
    let terms = (0..piece.len()).map(|i| (piece.monomial(i), coeff())).collect();
    Form::new(space.shape(), field, d, terms)
}

/// `n+m` dense forms of bidegree `d` with coefficients uniform in `F_p`.
pub fn random_instance(shape: Shape, d: Bidegree, field: PrimeField, seed: u64) -> Result<Instance> {
    random_instance_with_degrees(shape, &DegreeList::constant(d, shape.r())?, field, seed)
}

pub fn random_instance_with_degrees(
    shape: Shape,
    degrees: &DegreeList,
    field: PrimeField,
    seed: u64,
) -> Result<Instance> {
    if let Some(&d) = degrees.as_slice().iter().find(|d| d.a < 0 || d.b < 0 || (d.a, d.b) == (0, 0)) {
        return Err(Error::InvalidDegree(d));
    }
    let space = MonomialSpace::new(shape);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.modulus();
    let mut forms = Vec::with_capacity(degrees.len());
    for &d in degrees.as_slice() {
        let mut f = dense_form(&space, field, d, || rng.gen_range(0..p))?;
        // a form that came out zero is redrawn from the same stream
        while f.is_zero() {
            f = dense_form(&space, field, d, || rng.gen_range(0..p))?;
        }
        forms.push(f);
    }
    Instance::new(shape, field, forms)
}

/// Upper bound of the integer coefficient stream used by [`stream_instance`].
pub const STREAM_BOUND: u64 = 1 << 62;

/// Dense forms whose integer coefficients come from one seeded stream in
/// `[0, 2^62)` and are reduced into `field`. The same seed gives the same
/// integer ideal for every prime.
pub fn stream_instance(shape: Shape, d: Bidegree, field: PrimeField, seed: u64) -> Result<Instance> {
    if d.a < 1 || d.b < 1 {
        return Err(Error::InvalidDegree(d));
    }
    let space = MonomialSpace::new(shape);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = (0..shape.r())
        .map(|_| dense_form(&space, field, d, || rng.gen_range(0..STREAM_BOUND)))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(shape, field, forms)
}

/// `(x_0^2 y_0^2, x_1^2 y_1^2, x_2^2 y_2^2, (x_0+x_1+x_2)^2 (y_0+y_1+y_2)^2)` on shape (2,2).
pub fn paper_example(field: PrimeField) -> Instance {
    let shape = Shape::new(2, 2).expect("valid shape");
    let d = Bidegree::new(2, 2);
    let unit = |i: usize| {
        let mut e = vec![0u32; 3];
        e[i] = 2;
        e
    };
    let mut forms: Vec<Form> = (0..3)
        .map(|i| {
            let mono = Monomial { xexp: unit(i), yexp: unit(i) };
            Form::new(shape, field, d, vec![(mono, 1)]).expect("valid form")
        })
        .collect();
    // (x_0+x_1+x_2)^2 = sum over exponent vectors e with |e| = 2 of (2 / e!) x^e
    let square: Vec<(Vec<u32>, u64)> = MonomialSpace::new(shape)
        .x_block(2)
        .exps()
        .iter()
        .map(|e| (e.clone(), if e.contains(&2) { 1 } else { 2 }))
        .collect();
    let mut terms = Vec::new();
    for (xe, cx) in &square {
        for (ye, cy) in &square {
            terms.push((Monomial { xexp: xe.clone(), yexp: ye.clone() }, cx * cy));
        }
    }
    forms.push(Form::new(shape, field, d, terms).expect("valid form"));
    Instance::new(shape, field, forms).expect("nonzero forms")
}
