//! Square-free monomial ideals over a named, ordered set of variables.
//!
//! A monomial is stored as its support bitmask; exponents do not exist at
//! this level, so every value is square-free by construction. Generators
//! are kept in input order, and that order fixes the vertex numbering of
//! everything derived downstream (vertex `j` is generator `j - 1`).

use std::{fmt, sync::Arc};

use serde::{Deserialize, Serialize};

use crate::{
  bits::{Bits, CAPACITY},
  error::{Error, Result},
};

/// The ambient variables `x_0, ..., x_{n-1}` of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
  names: Vec<String>,
}

impl Ring {
  pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Ring>> {
    let names: Vec<String> = names.into_iter().map(Into::into).collect();
    if names.len() > CAPACITY {
      return Err(Error::Capacity { what: "variables", count: names.len(), limit: CAPACITY });
    }
    for (i, n) in names.iter().enumerate() {
      if !is_identifier(n) {
        return Err(Error::Syntax { position: 0, message: format!("invalid variable name `{n}`") });
      }
      if names[..i].contains(n) {
        return Err(Error::Syntax { position: 0, message: format!("duplicate variable name `{n}`") });
      }
    }
    Ok(Arc::new(Ring { names }))
  }

  /// Ring with fresh variables `x1, ..., xn`.
  pub fn fresh(n: usize) -> Result<Arc<Ring>> {
    Ring::new((1..=n).map(|i| format!("x{i}")))
  }

  pub fn len(&self) -> usize {
    self.names.len()
  }

  pub fn is_empty(&self) -> bool {
    self.names.is_empty()
  }

  pub fn name(&self, index: usize) -> &str {
    &self.names[index]
  }

  pub fn names(&self) -> &[String] {
    &self.names
  }

  pub fn index_of(&self, name: &str) -> Option<usize> {
    self.names.iter().position(|n| n == name)
  }

  pub fn variable(self: &Arc<Self>, index: usize) -> Option<Variable> {
    (index < self.len()).then(|| Variable { index, ring: Arc::clone(self) })
  }

  fn single_letters(&self) -> bool {
    self.names.iter().all(|n| n.len() == 1)
  }
}

fn is_identifier(s: &str) -> bool {
  let mut chars = s.chars();
  matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
    && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
  index: usize,
  ring: Arc<Ring>,
}

impl Variable {
  pub fn index(&self) -> usize {
    self.index
  }

  pub fn name(&self) -> &str {
    self.ring.name(self.index)
  }

  pub fn ring(&self) -> &Arc<Ring> {
    &self.ring
  }
}

/// A square-free monomial, i.e. a set of variables of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
  support: Bits,
  ring: Arc<Ring>,
}

impl Monomial {
  pub fn new(ring: &Arc<Ring>, support: Bits) -> Result<Monomial> {
    if support.max().is_some_and(|m| m >= ring.len()) {
      return Err(Error::UnknownVariable(format!("x_{}", support.max().unwrap_or(0))));
    }
    Ok(Monomial { support, ring: Arc::clone(ring) })
  }

  pub fn support(&self) -> Bits {
    self.support
  }

  pub fn ring(&self) -> &Arc<Ring> {
    &self.ring
  }

  pub fn degree(&self) -> usize {
    self.support.len()
  }

  fn check_ring(&self, other: &Monomial) -> Result<()> {
    if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
      Ok(())
    } else {
      Err(Error::RingMismatch)
    }
  }

  pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
    self.check_ring(other)?;
    Ok(Monomial { support: self.support.union(other.support), ring: Arc::clone(&self.ring) })
  }

  /// `self | other`.
  pub fn divides(&self, other: &Monomial) -> Result<bool> {
    self.check_ring(other)?;
    Ok(self.support.is_subset(other.support))
  }
}

impl fmt::Display for Monomial {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write_support(f, &self.ring, self.support)
  }
}

fn write_support(f: &mut impl fmt::Write, ring: &Ring, support: Bits) -> fmt::Result {
  if support.is_empty() {
    return f.write_str("1");
  }
  let sep = if ring.single_letters() { "" } else { "*" };
  let mut names: Vec<&str> = support.iter().map(|v| ring.name(v)).collect();
  names.sort_by_key(|n| name_key(n));
  f.write_str(&names.join(sep))
}

/// Orders `x2` before `x10`: alphabetic prefix, then numeric suffix.
fn name_key(name: &str) -> (&str, usize, &str) {
  let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
  let (head, digits) = name.split_at(split);
  (head, digits.parse().unwrap_or(0), digits)
}

/// A square-free monomial ideal given by its minimal generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
  ring: Arc<Ring>,
  generators: Vec<Bits>,
  dropped: Vec<Bits>,
}

/// Result of an operation that may leave the class of proper non-zero ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quotient {
  Proper(MonomialIdeal),
  /// The unit ideal `(1)`.
  Unit,
  /// The zero ideal.
  Zero,
}

impl Quotient {
  pub fn proper(self) -> Option<MonomialIdeal> {
    match self {
      Quotient::Proper(i) => Some(i),
      _ => None,
    }
  }
}

impl MonomialIdeal {
  /// Builds an ideal from generator supports, keeping input order and
  /// dropping (and recording) non-minimal or repeated generators.
  pub fn new(ring: &Arc<Ring>, generators: impl IntoIterator<Item = Bits>) -> Result<MonomialIdeal> {
    let raw: Vec<Bits> = generators.into_iter().collect();
    for g in &raw {
      if g.is_empty() {
        return Err(Error::Syntax { position: 0, message: "generator with empty support (unit)".into() });
      }
      Monomial::new(ring, *g)?;
    }
    let (generators, dropped) = minimalize(&raw);
    if generators.is_empty() {
      return Err(Error::EmptyIdeal);
    }
    if generators.len() > CAPACITY - 1 {
      return Err(Error::Capacity { what: "generators", count: generators.len(), limit: CAPACITY - 1 });
    }
    Ok(MonomialIdeal { ring: Arc::clone(ring), generators, dropped })
  }

  pub fn ring(&self) -> &Arc<Ring> {
    &self.ring
  }

  /// Number of minimal generators, `mu`.
  pub fn len(&self) -> usize {
    self.generators.len()
  }

  pub fn is_empty(&self) -> bool {
    self.generators.is_empty()
  }

  pub fn supports(&self) -> &[Bits] {
    &self.generators
  }

  /// Generator `j` (0-based).
  pub fn generator(&self, j: usize) -> Monomial {
    Monomial { support: self.generators[j], ring: Arc::clone(&self.ring) }
  }

  pub fn generators(&self) -> impl Iterator<Item = Monomial> + '_ {
    (0..self.len()).map(|j| self.generator(j))
  }

  /// Generators removed during construction because another generator divides them.
  pub fn dropped(&self) -> &[Bits] {
    &self.dropped
  }

  pub fn has_drop_warning(&self) -> bool {
    !self.dropped.is_empty()
  }

  /// Variables that divide at least one generator.
  pub fn used_variables(&self) -> Bits {
    self.generators.iter().fold(Bits::EMPTY, |a, g| a.union(*g))
  }

  fn variable_index(&self, v: &Variable) -> Result<usize> {
    if **v.ring() != *self.ring {
      return Err(Error::RingMismatch);
    }
    Ok(v.index())
  }

  /// `I : v`: remove `v` from every generator and minimalize.
  pub fn colon_by_variable(&self, v: &Variable) -> Result<Quotient> {
    let v = self.variable_index(v)?;
    let stripped: Vec<Bits> = self.generators.iter().map(|g| g.without(v)).collect();
    if stripped.iter().any(|g| g.is_empty()) {
      return Ok(Quotient::Unit);
    }
    let (generators, _) = minimalize(&stripped);
    Ok(Quotient::Proper(MonomialIdeal { ring: Arc::clone(&self.ring), generators, dropped: vec![] }))
  }

  /// `(I, v)`: adjoin `v`, dropping the generators it divides.
  pub fn add_variable_generator(&self, v: &Variable) -> Result<MonomialIdeal> {
    let v = self.variable_index(v)?;
    let mut generators = vec![Bits::singleton(v)];
    generators.extend(self.generators.iter().copied().filter(|g| !g.contains(v)));
    Ok(MonomialIdeal { ring: Arc::clone(&self.ring), generators, dropped: vec![] })
  }

  /// Removes generator `j` (1-based, matching vertex labels).
  pub fn drop_generator(&self, j: usize) -> Result<Quotient> {
    if j == 0 || j > self.len() {
      return Err(Error::IndexOutOfRange { index: j, len: self.len() });
    }
    if self.len() == 1 {
      return Ok(Quotient::Zero);
    }
    let mut generators = self.generators.clone();
    generators.remove(j - 1);
    Ok(Quotient::Proper(MonomialIdeal { ring: Arc::clone(&self.ring), generators, dropped: vec![] }))
  }

  pub fn to_doc(&self) -> IdealDoc {
    IdealDoc {
      variables: self.ring.names().to_vec(),
      generators: self.generators.iter().map(|g| g.to_vec()).collect(),
    }
  }

  pub fn from_doc(doc: &IdealDoc) -> Result<MonomialIdeal> {
    let ring = Ring::new(doc.variables.iter().cloned())?;
    let mut gens = Vec::with_capacity(doc.generators.len());
    for g in &doc.generators {
      let mut b = Bits::EMPTY;
      for &v in g {
        if v >= ring.len() {
          return Err(Error::UnknownVariable(format!("index {v}")));
        }
        if b.contains(v) {
          return Err(Error::NotSquareFree { variable: ring.name(v).to_string(), exponent: 2, position: 0 });
        }
        b.insert(v);
      }
      gens.push(b);
    }
    if gens.is_empty() {
      return Err(Error::EmptyIdeal);
    }
    MonomialIdeal::new(&ring, gens)
  }

  /// Generators in the text format, e.g. `ab, bcg, cdg`.
  pub fn to_text(&self) -> String {
    self.to_string()
  }
}

impl fmt::Display for MonomialIdeal {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (k, g) in self.generators.iter().enumerate() {
      if k > 0 {
        f.write_str(", ")?;
      }
      write_support(f, &self.ring, *g)?;
    }
    Ok(())
  }
}

/// JSON form: `{"variables": [...], "generators": [[0,1], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDoc {
  pub variables: Vec<String>,
  pub generators: Vec<Vec<usize>>,
}

/// Splits `raw` into minimal generators (input order kept) and the dropped ones.
pub fn minimalize(raw: &[Bits]) -> (Vec<Bits>, Vec<Bits>) {
  let mut kept = Vec::new();
  let mut dropped = Vec::new();
  for (i, g) in raw.iter().enumerate() {
    let redundant = raw.iter().enumerate().any(|(k, h)| {
      if k == i {
        return false;
      }
      // a strictly smaller divisor, or an identical generator seen earlier
      h.is_proper_subset(*g) || (h == g && k < i)
    });
    if redundant {
      dropped.push(*g);
    } else {
      kept.push(*g);
    }
  }
  (kept, dropped)
}

/// Parses the text format: comma-separated monomial words.
///
/// Within a word, single-letter variables may be juxtaposed (`bcg`);
/// multi-letter names need `*` separators (`x1*x2`). A bare identifier
/// such as `x1` is read as one variable. `^1` is accepted, higher
/// exponents are rejected.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
  let mut names: Vec<String> = Vec::new();
  let mut gens: Vec<Bits> = Vec::new();
  let mut offset = 0;
  for word in text.split(',') {
    let start = offset + (word.len() - word.trim_start().len());
    offset += word.len() + 1;
    let trimmed = word.trim();
    if trimmed.is_empty() {
      if text.trim().is_empty() {
        return Err(Error::EmptyIdeal);
      }
      return Err(Error::Syntax { position: start, message: "empty generator".into() });
    }
    let factors = split_factors(trimmed, start)?;
    let mut support = Bits::EMPTY;
    for (name, exponent, pos) in factors {
      let idx = match names.iter().position(|n| *n == name) {
        Some(i) => i,
        None => {
          if names.len() == CAPACITY {
            return Err(Error::Capacity { what: "variables", count: CAPACITY + 1, limit: CAPACITY });
          }
          names.push(name.clone());
          names.len() - 1
        }
      };
      let exponent = if support.contains(idx) { exponent + 1 } else { exponent };
      if exponent > 1 {
        return Err(Error::NotSquareFree { variable: name, exponent, position: pos });
      }
      support.insert(idx);
    }
    gens.push(support);
  }
  if gens.is_empty() {
    return Err(Error::EmptyIdeal);
  }
  let ring = Ring::new(names)?;
  MonomialIdeal::new(&ring, gens)
}

fn split_factors(word: &str, base: usize) -> Result<Vec<(String, u32, usize)>> {
  let mut out = Vec::new();
  if word.contains('*') {
    let mut off = 0;
    for piece in word.split('*') {
      let pos = base + off;
      off += piece.len() + 1;
      let (name, exp) = split_exponent(piece.trim(), pos)?;
      if !is_identifier(name) {
        return Err(Error::Syntax { position: pos, message: format!("invalid variable name `{name}`") });
      }
      out.push((name.to_string(), exp, pos));
    }
    return Ok(out);
  }
  if is_identifier(word) && !word.chars().all(|c| c.is_ascii_alphabetic()) {
    return Ok(vec![(word.to_string(), 1, base)]);
  }
  let bytes = word.as_bytes();
  let mut i = 0;
  while i < bytes.len() {
    let c = bytes[i] as char;
    if !c.is_ascii_alphabetic() {
      return Err(Error::Syntax { position: base + i, message: format!("unexpected character `{c}`") });
    }
    let pos = base + i;
    i += 1;
    let mut exp = 1;
    if i < bytes.len() && bytes[i] == b'^' {
      let digits_start = i + 1;
      let mut j = digits_start;
      while j < bytes.len() && bytes[j].is_ascii_digit() {
        j += 1;
      }
      exp = parse_exponent(&word[digits_start..j], base + digits_start)?;
      i = j;
    }
    out.push((c.to_string(), exp, pos));
  }
  Ok(out)
}

fn split_exponent(piece: &str, pos: usize) -> Result<(&str, u32)> {
  match piece.split_once('^') {
    Some((name, exp)) => Ok((name, parse_exponent(exp, pos + name.len() + 1)?)),
    None => Ok((piece, 1)),
  }
}

fn parse_exponent(digits: &str, pos: usize) -> Result<u32> {
  let e: u32 =
    digits.parse().map_err(|_| Error::Syntax { position: pos, message: "expected an exponent".into() })?;
  if e == 0 {
    return Err(Error::Syntax { position: pos, message: "exponent 0 is not allowed".into() });
  }
  Ok(e)
}
