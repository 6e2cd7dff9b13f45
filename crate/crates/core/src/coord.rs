//! Coordinatizations: labelling lattice elements with monomials and reading
//! off one generator per atom.

use std::{collections::BTreeMap, fmt, sync::Arc};

use serde::{Deserialize, Serialize};

use crate::{
  bits::Bits,
  error::{Error, Result},
  hypergraph::Hypergraph,
  ideal::{MonomialIdeal, Ring},
  lattice::{lattice_from_hypergraph, lcm_lattice_of_exponents, SetFamilyLattice},
};

/// Exponent vector over a ring; missing trailing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
  pub fn variable(index: usize) -> Exponents {
    let mut v = vec![0; index + 1];
    v[index] = 1;
    Exponents(v)
  }

  pub fn is_one(&self) -> bool {
    self.0.iter().all(|&e| e == 0)
  }

  pub fn get(&self, v: usize) -> u32 {
    self.0.get(v).copied().unwrap_or(0)
  }

  pub fn support(&self) -> Bits {
    self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, _)| v).collect()
  }

  pub fn mul(&self, other: &Exponents) -> Exponents {
    let n = self.0.len().max(other.0.len());
    Exponents((0..n).map(|v| self.get(v) + other.get(v)).collect())
  }

  pub fn coprime(&self, other: &Exponents) -> bool {
    self.support().is_disjoint(other.support())
  }

  fn padded(&self, n: usize) -> Vec<u32> {
    (0..n).map(|v| self.get(v)).collect()
  }
}

/// A monomial ideal whose generators may carry exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentIdeal {
  pub ring: Arc<Ring>,
  pub generators: Vec<Exponents>,
}

impl ExponentIdeal {
  pub fn is_square_free(&self) -> bool {
    self.generators.iter().all(|g| g.0.iter().all(|&e| e <= 1))
  }

  pub fn to_square_free(&self) -> Option<MonomialIdeal> {
    if !self.is_square_free() {
      return None;
    }
    MonomialIdeal::new(&self.ring, self.generators.iter().map(Exponents::support)).ok()
  }

  pub fn lcm_lattice(&self) -> Result<SetFamilyLattice> {
    let n = self.ring.len();
    lcm_lattice_of_exponents(&self.generators.iter().map(|g| g.padded(n)).collect::<Vec<_>>())
  }
}

impl fmt::Display for ExponentIdeal {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let single = self.ring.names().iter().all(|n| n.len() == 1);
    for (k, g) in self.generators.iter().enumerate() {
      if k > 0 {
        f.write_str(", ")?;
      }
      let factors: Vec<String> = g
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(
          |(v, &e)| if e == 1 { self.ring.name(v).to_string() } else { format!("{}^{e}", self.ring.name(v)) },
        )
        .collect();
      if factors.is_empty() {
        f.write_str("1")?;
      } else {
        f.write_str(&factors.join(if single { "" } else { "*" }))?;
      }
    }
    Ok(())
  }
}

/// Monomial labels on lattice elements; unlabelled elements carry 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
  pub ring: Arc<Ring>,
  pub labels: BTreeMap<Bits, Exponents>,
}

impl Labeling {
  pub fn new(ring: &Arc<Ring>) -> Labeling {
    Labeling { ring: Arc::clone(ring), labels: BTreeMap::new() }
  }

  /// Multiplies the label of `element` by `m`.
  pub fn add(&mut self, element: Bits, m: &Exponents) {
    let cur = self.labels.remove(&element).unwrap_or_default();
    self.labels.insert(element, cur.mul(m));
  }

  pub fn label(&self, element: Bits) -> Option<&Exponents> {
    self.labels.get(&element).filter(|m| !m.is_one())
  }

  /// Every meet-irreducible below the top is labelled.
  pub fn check_irreducibles_labelled(&self, l: &SetFamilyLattice) -> Result<()> {
    match l.proper_meet_irreducibles().into_iter().find(|&m| self.label(m).is_none()) {
      Some(m) => Err(Error::UnlabeledMeetIrreducible(m)),
      None => Ok(()),
    }
  }

  /// Elements whose labels share a variable are comparable.
  pub fn check_shared_variables_comparable(&self) -> Result<()> {
    let labelled: Vec<(Bits, &Exponents)> =
      self.labels.iter().filter(|(_, m)| !m.is_one()).map(|(e, m)| (*e, m)).collect();
    for (k, (a, ma)) in labelled.iter().enumerate() {
      for (b, mb) in &labelled[k + 1..] {
        if !ma.coprime(mb) && !a.is_subset(*b) && !b.is_subset(*a) {
          return Err(Error::IncomparableSharedVariable(*a, *b));
        }
      }
    }
    Ok(())
  }

  pub fn to_doc(&self) -> LabelingDoc {
    LabelingDoc {
      variables: self.ring.names().to_vec(),
      labels: self
        .labels
        .iter()
        .filter(|(_, m)| !m.is_one())
        .map(|(e, m)| LabelDoc { element: e.to_vec(), exponents: m.padded(self.ring.len()) })
        .collect(),
    }
  }

  pub fn from_doc(doc: &LabelingDoc) -> Result<Labeling> {
    let ring = Ring::new(doc.variables.iter().cloned())?;
    let mut lab = Labeling::new(&ring);
    for l in &doc.labels {
      if l.exponents.len() > ring.len() {
        return Err(Error::Document("label has more exponents than variables".into()));
      }
      lab.add(l.element.iter().copied().collect(), &Exponents(l.exponents.clone()));
    }
    Ok(lab)
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelDoc {
  pub element: Vec<usize>,
  pub exponents: Vec<u32>,
}

/// JSON form of a labelling: variable names plus exponent vectors per element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingDoc {
  pub variables: Vec<String>,
  pub labels: Vec<LabelDoc>,
}

/// Both labelling conditions, irreducibles first.
pub fn check_labeling(l: &SetFamilyLattice, lab: &Labeling) -> Result<()> {
  lab.check_irreducibles_labelled(l)?;
  lab.check_shared_variables_comparable()
}

/// `x(a)` is the product of the labels of the elements not above `a`.
pub fn coordinatize(l: &SetFamilyLattice, lab: &Labeling) -> Result<ExponentIdeal> {
  for e in lab.labels.keys() {
    if !l.contains(*e) {
      return Err(Error::NotAnElement(*e));
    }
  }
  check_labeling(l, lab)?;
  let generators = (1..=l.num_atoms())
    .map(|a| {
      lab.labels.iter().filter(|(p, _)| !p.contains(a)).fold(Exponents::default(), |acc, (_, m)| acc.mul(m))
    })
    .map(|g| Exponents(g.padded(lab.ring.len())))
    .collect();
  Ok(ExponentIdeal { ring: Arc::clone(&lab.ring), generators })
}

/// One fresh variable per meet-irreducible below the top.
pub fn canonical_labeling(l: &SetFamilyLattice) -> Result<Labeling> {
  let mi = l.proper_meet_irreducibles();
  let ring = Ring::fresh(mi.len())?;
  let mut lab = Labeling::new(&ring);
  for (k, m) in mi.into_iter().enumerate() {
    lab.add(m, &Exponents::variable(k));
  }
  Ok(lab)
}

/// Labels the complement of each edge with that edge's variables and
/// coordinatizes; the result is the ideal the hypergraph came from.
pub fn hypergraph_coordinatization(h: &Hypergraph) -> Result<(Labeling, MonomialIdeal)> {
  let l = lattice_from_hypergraph(h)?;
  if !h.has_labels() {
    return Err(Error::Precondition("every edge needs a variable label".into()));
  }
  let names: Vec<String> = h.labels().values().flatten().cloned().collect();
  let ring = Ring::new(names.iter().cloned())?;
  let order: Vec<usize> = h.vertices().collect();
  let full = Bits::range_inclusive(1, order.len());
  let mut lab = Labeling::new(&ring);
  for (edge, vars) in h.labels() {
    let renum: Bits = edge.iter().map(|v| order.binary_search(&v).unwrap() + 1).collect();
    for name in vars {
      lab.add(full.difference(renum), &Exponents::variable(ring.index_of(name).unwrap()));
    }
  }
  let ideal = coordinatize(&l, &lab)?;
  let ideal =
    ideal.to_square_free().ok_or_else(|| Error::Precondition("edge labels repeat a variable".into()))?;
  Ok((lab, ideal))
}
