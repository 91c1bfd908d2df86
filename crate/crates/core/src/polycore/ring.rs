use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Which block of the ring a variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    /// Variables of the base polynomial ring, bidegree (1, 0).
    Y,
    /// Rees variables, bidegree (0, 1).
    T,
    /// Generic coefficients, bidegree (0, 0).
    Z,
    /// Internal helper variables (elimination tags), bidegree (0, 0).
    Aux,
}

impl Block {
    pub fn bidegree(self) -> (u32, u32) {
        match self {
            Block::Y => (1, 0),
            Block::T => (0, 1),
            Block::Z | Block::Aux => (0, 0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub block: Block,
}

impl Variable {
    pub fn new(name: impl Into<String>, block: Block) -> Self {
        Variable {
            name: name.into(),
            block,
        }
    }
}

/// Monomial orders supported by the engine.
///
/// `BigradedGrevlex` compares T-degree, then Y-degree, then falls back to
/// grevlex. `Elim(vars)` compares the total degree in `vars` first, then
/// grevlex, so it eliminates `vars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    BigradedGrevlex,
    Elim(Vec<usize>),
}

/// Exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u16; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables that occur (first 64 variables).
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.0.iter().enumerate().take(64) {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

/// A polynomial ring over GF(p) with named, block-tagged variables and a
/// fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FieldSpec,
    vars: Vec<Variable>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: FieldSpec, vars: Vec<Variable>, order: MonomialOrder) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Precondition(format!(
                    "duplicate variable name {}",
                    v.name
                )));
            }
        }
        if let MonomialOrder::Elim(block) = &order {
            if block.iter().any(|&i| i >= vars.len()) {
                return Err(Error::Precondition(
                    "elimination order refers to a missing variable".into(),
                ));
            }
        }
        Ok(PolyRing { field, vars, order })
    }

    /// Ring in the given Y-variables, bigraded grevlex order.
    pub fn with_y_vars(field: FieldSpec, names: &[&str]) -> Result<Self> {
        let vars = names.iter().map(|n| Variable::new(*n, Block::Y)).collect();
        PolyRing::new(field, vars, MonomialOrder::BigradedGrevlex)
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn block_indices(&self, block: Block) -> Vec<usize> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.block == block)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<PolyRing> {
        PolyRing::new(self.field, self.vars.clone(), order)
    }

    /// Append variables at the end; the order is kept (and any elimination
    /// block keeps its indices).
    pub fn extended(&self, extra: Vec<Variable>, order: MonomialOrder) -> Result<PolyRing> {
        let mut vars = self.vars.clone();
        vars.extend(extra);
        PolyRing::new(self.field, vars, order)
    }

    /// Ring on the variables not in `drop`. Elimination orders fall back to
    /// bigraded grevlex.
    pub fn without(&self, drop: &[usize]) -> Result<PolyRing> {
        let vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        let order = match &self.order {
            MonomialOrder::Elim(_) => MonomialOrder::BigradedGrevlex,
            o => o.clone(),
        };
        PolyRing::new(self.field, vars, order)
    }

    pub fn bidegree(&self, m: &Monomial) -> (u32, u32) {
        let mut y = 0;
        let mut t = 0;
        for (v, &e) in self.vars.iter().zip(m.exponents()) {
            let (dy, dt) = v.block.bidegree();
            y += dy * e as u32;
            t += dt * e as u32;
        }
        (y, t)
    }

    fn block_degree(&self, m: &Monomial, block: Block) -> u32 {
        self.vars
            .iter()
            .zip(m.exponents())
            .filter(|(v, _)| v.block == block)
            .map(|(_, &e)| e as u32)
            .sum()
    }

    #[inline]
    fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    }

    /// Compare two monomials under the ring's order.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.order {
            MonomialOrder::Grevlex => Self::grevlex(a, b),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::BigradedGrevlex => self
                .block_degree(a, Block::T)
                .cmp(&self.block_degree(b, Block::T))
                .then_with(|| {
                    self.block_degree(a, Block::Y)
                        .cmp(&self.block_degree(b, Block::Y))
                })
                .then_with(|| Self::grevlex(a, b)),
            MonomialOrder::Elim(block) => {
                let da: u32 = block.iter().map(|&i| a.0[i] as u32).sum();
                let db: u32 = block.iter().map(|&i| b.0[i] as u32).sum();
                da.cmp(&db).then_with(|| Self::grevlex(a, b))
            }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(m.exponents())
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    v.name.clone()
                } else {
                    format!("{}^{}", v.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        write!(
            f,
            "GF({})[{}] ({:?})",
            self.field.characteristic(),
            names.join(","),
            self.order
        )
    }
}
