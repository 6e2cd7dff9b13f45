//! Finite atomic lattices modelled as intersection-closed families of subsets
//! of the atoms `{1, ..., n}`.
//!
//! Every lattice keeps a list of meet generators: sets whose intersections
//! produce every element below the top. Joins are then cheap, since the join
//! of a set of atoms is the intersection of the generators containing it.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::{
  bits::{Bits, CAPACITY},
  error::{Error, Result},
  hypergraph::Hypergraph,
  ideal::MonomialIdeal,
};

/// Default cap on the number of lattice elements built.
pub const MAX_ELEMENTS: usize = 1 << 18;

#[derive(Clone, Debug)]
pub struct SetFamilyLattice {
  atoms: usize,
  elements: Vec<Bits>,
  meet_gens: Vec<Bits>,
}

impl PartialEq for SetFamilyLattice {
  fn eq(&self, other: &Self) -> bool {
    self.atoms == other.atoms && self.elements == other.elements
  }
}

impl Eq for SetFamilyLattice {}

fn sort_family(family: impl IntoIterator<Item = Bits>) -> Vec<Bits> {
  let mut v: Vec<Bits> = family.into_iter().collect();
  v.sort_unstable_by_key(|b| b.0);
  v.dedup();
  v
}

/// Intersection-closure of `gens` inside the full set, with the full set and
/// the empty set adjoined.
pub fn intersection_closure(full: Bits, gens: &[Bits], limit: usize) -> Result<Vec<Bits>> {
  let mut seen: HashSet<Bits> = HashSet::from([full, Bits::EMPTY]);
  let mut family = vec![full];
  for &g in gens {
    let g = g.intersection(full);
    let fresh: Vec<Bits> = family.iter().map(|f| f.intersection(g)).filter(|x| seen.insert(*x)).collect();
    family.extend(fresh);
    if seen.len() > limit {
      return Err(Error::OracleLimit { what: "lattice elements", count: seen.len(), limit });
    }
  }
  Ok(sort_family(seen))
}

impl SetFamilyLattice {
  /// Validates `elements` as an atomic lattice on `atoms` atoms.
  pub fn new(atoms: usize, elements: impl IntoIterator<Item = Bits>) -> Result<Self> {
    if atoms == 0 || atoms >= CAPACITY {
      return Err(Error::Capacity { what: "atoms", count: atoms, limit: CAPACITY - 1 });
    }
    let elements = sort_family(elements);
    let full = Bits::range_inclusive(1, atoms);
    let set: HashSet<Bits> = elements.iter().copied().collect();
    if let Some(x) = elements.iter().find(|x| !x.is_subset(full)) {
      return Err(Error::InvalidLattice(format!("{x} is not a subset of the atoms")));
    }
    if !set.contains(&Bits::EMPTY) || !set.contains(&full) {
      return Err(Error::InvalidLattice("missing the empty set or the full set".into()));
    }
    if let Some(a) = (1..=atoms).find(|&a| !set.contains(&Bits::singleton(a))) {
      return Err(Error::InvalidLattice(format!("atom {{{a}}} missing")));
    }
    for (k, x) in elements.iter().enumerate() {
      for y in &elements[k + 1..] {
        if !set.contains(&x.intersection(*y)) {
          return Err(Error::InvalidLattice(format!("{x} and {y} meet outside the family")));
        }
      }
    }
    let mut l = SetFamilyLattice { atoms, elements, meet_gens: Vec::new() };
    l.meet_gens = l.meet_irreducibles().into_iter().filter(|&m| m != full).collect();
    Ok(l)
  }

  /// Lattice generated under intersection by `gens`; no atomicity check.
  fn from_meet_generators(atoms: usize, gens: Vec<Bits>, limit: usize) -> Result<Self> {
    let full = Bits::range_inclusive(1, atoms);
    let elements = intersection_closure(full, &gens, limit)?;
    let meet_gens = sort_family(gens.into_iter().map(|g| g.intersection(full)).filter(|&g| g != full));
    Ok(SetFamilyLattice { atoms, elements, meet_gens })
  }

  pub fn num_atoms(&self) -> usize {
    self.atoms
  }

  pub fn len(&self) -> usize {
    self.elements.len()
  }

  pub fn is_empty(&self) -> bool {
    self.elements.is_empty()
  }

  /// Elements sorted by bitmask.
  pub fn elements(&self) -> &[Bits] {
    &self.elements
  }

  pub fn top(&self) -> Bits {
    Bits::range_inclusive(1, self.atoms)
  }

  pub fn bottom(&self) -> Bits {
    Bits::EMPTY
  }

  pub fn contains(&self, x: Bits) -> bool {
    self.elements.binary_search_by_key(&x.0, |b| b.0).is_ok()
  }

  pub fn index_of(&self, x: Bits) -> Option<usize> {
    self.elements.binary_search_by_key(&x.0, |b| b.0).ok()
  }

  fn member(&self, x: Bits) -> Result<Bits> {
    if self.contains(x) {
      Ok(x)
    } else {
      Err(Error::NotAnElement(x))
    }
  }

  /// Smallest element containing `s` (any subset of the atoms).
  pub fn closure(&self, s: Bits) -> Bits {
    self.meet_gens.iter().filter(|g| s.is_subset(**g)).fold(self.top(), |acc, g| acc.intersection(*g))
  }

  pub fn join(&self, a: Bits, b: Bits) -> Result<Bits> {
    Ok(self.closure(self.member(a)?.union(self.member(b)?)))
  }

  pub fn meet(&self, a: Bits, b: Bits) -> Result<Bits> {
    Ok(self.member(a)?.intersection(self.member(b)?))
  }

  /// `{y : x <= y}`.
  pub fn filter(&self, x: Bits) -> Result<Vec<Bits>> {
    let x = self.member(x)?;
    Ok(self.elements.iter().copied().filter(|y| x.is_subset(*y)).collect())
  }

  /// Minimal elements strictly above `x`.
  pub fn upper_covers(&self, x: Bits) -> Vec<Bits> {
    let above: Vec<Bits> = self.elements.iter().copied().filter(|y| x.is_proper_subset(*y)).collect();
    above.iter().copied().filter(|y| !above.iter().any(|z| z.is_proper_subset(*y))).collect()
  }

  /// Elements that are not the meet of two strictly larger elements; the top
  /// is included.
  pub fn meet_irreducibles(&self) -> Vec<Bits> {
    let top = self.top();
    self
      .elements
      .iter()
      .copied()
      .filter(|&x| {
        if x == top {
          return true;
        }
        let above =
          self.elements.iter().filter(|y| x.is_proper_subset(**y)).fold(top, |acc, y| acc.intersection(*y));
        above != x
      })
      .collect()
  }

  /// Meet-irreducibles other than the top.
  pub fn proper_meet_irreducibles(&self) -> Vec<Bits> {
    let top = self.top();
    self.meet_irreducibles().into_iter().filter(|&m| m != top).collect()
  }

  /// Every element below the top is the meet of the meet-irreducibles above it.
  pub fn meets_of_irreducibles(&self) -> bool {
    let mi = self.proper_meet_irreducibles();
    let top = self.top();
    self
      .elements
      .iter()
      .filter(|&&p| p != top)
      .all(|&p| mi.iter().filter(|m| p.is_subset(**m)).fold(top, |acc, m| acc.intersection(*m)) == p)
  }

  /// Cover relations `(lower, upper)`.
  pub fn hasse_covers(&self) -> Vec<(Bits, Bits)> {
    self.elements.iter().flat_map(|&x| self.upper_covers(x).into_iter().map(move |y| (x, y))).collect()
  }

  pub fn to_doc(&self) -> LatticeDoc {
    LatticeDoc { atoms: self.atoms, elements: self.elements.iter().map(|e| e.to_vec()).collect() }
  }

  pub fn from_doc(doc: &LatticeDoc) -> Result<Self> {
    let mut elements = Vec::with_capacity(doc.elements.len());
    for e in &doc.elements {
      let mut b = Bits::EMPTY;
      for &a in e {
        if a == 0 || a > doc.atoms {
          return Err(Error::Document(format!("atom {a} outside 1..={}", doc.atoms)));
        }
        b.insert(a);
      }
      elements.push(b);
    }
    SetFamilyLattice::new(doc.atoms, elements)
  }

  pub fn to_dot(&self) -> String {
    use std::fmt::Write;
    let mut s = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext, fontsize=10];\n");
    for (k, e) in self.elements.iter().enumerate() {
      let label = if e.is_empty() { "0".to_string() } else { e.to_string() };
      let _ = writeln!(s, "  e{k} [label=\"{label}\"];");
    }
    for (a, b) in self.hasse_covers() {
      let _ =
        writeln!(s, "  e{} -> e{} [arrowhead=none];", self.index_of(a).unwrap(), self.index_of(b).unwrap());
    }
    s.push_str("}\n");
    s
  }
}

/// JSON form: `{"atoms": n, "elements": [[], [1], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
  pub atoms: usize,
  pub elements: Vec<Vec<usize>>,
}

/// LCM-lattice of `I`: for every subset of generators, the set of generators
/// dividing its lcm.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<SetFamilyLattice> {
  lcm_lattice_capped(ideal, MAX_ELEMENTS)
}

pub fn lcm_lattice_capped(ideal: &MonomialIdeal, limit: usize) -> Result<SetFamilyLattice> {
  let gens = ideal.supports();
  let n = gens.len();
  // generators not divisible by the variable v; the lcm of A is divisible by
  // g_j exactly when A avoids none of the variables of g_j
  let zs: Vec<Bits> = ideal
    .used_variables()
    .iter()
    .map(|v| gens.iter().enumerate().filter(|(_, g)| !g.contains(v)).map(|(j, _)| j + 1).collect())
    .collect();
  SetFamilyLattice::from_meet_generators(n, zs, limit)
}

/// LCM-lattice of generators given by exponent vectors.
pub fn lcm_lattice_of_exponents(gens: &[Vec<u32>]) -> Result<SetFamilyLattice> {
  let n = gens.len();
  if n == 0 {
    return Err(Error::EmptyIdeal);
  }
  if n >= CAPACITY {
    return Err(Error::Capacity { what: "generators", count: n, limit: CAPACITY - 1 });
  }
  let vars = gens.iter().map(Vec::len).max().unwrap_or(0);
  let exp = |j: usize, v: usize| gens[j].get(v).copied().unwrap_or(0);
  let mut zs = Vec::new();
  for v in 0..vars {
    let levels: BTreeSet<u32> = (0..n).map(|j| exp(j, v)).collect();
    for &t in &levels {
      zs.push((0..n).filter(|&j| exp(j, v) <= t).map(|j| j + 1).collect());
    }
  }
  SetFamilyLattice::from_meet_generators(n, zs, MAX_ELEMENTS)
}

/// Intersection-closure of the edge complements of a separated hypergraph,
/// with the full set and the empty set adjoined. Vertices are renumbered
/// `1..=mu` in ascending order.
pub fn lattice_from_hypergraph(h: &Hypergraph) -> Result<SetFamilyLattice> {
  lattice_from_hypergraph_capped(h, MAX_ELEMENTS)
}

pub fn lattice_from_hypergraph_capped(h: &Hypergraph, limit: usize) -> Result<SetFamilyLattice> {
  if let Some((u, v)) = h.separation_witness() {
    return Err(Error::NotSeparated(u, v));
  }
  if h.is_empty() {
    return Err(Error::EmptyIdeal);
  }
  let order: Vec<usize> = h.vertices().collect();
  let renum = |e: Bits| e.iter().map(|v| order.binary_search(&v).unwrap() + 1).collect::<Bits>();
  let full = Bits::range_inclusive(1, order.len());
  let comps: Vec<Bits> = h.edges().map(|e| full.difference(renum(e))).collect();
  SetFamilyLattice::from_meet_generators(order.len(), comps, limit)
}

/// Edges equal to the union of the edges properly contained in them.
pub fn union_edge_elements(h: &Hypergraph) -> BTreeSet<Bits> {
  h.edges()
    .filter(|&f| {
      let below = h.edges().filter(|e| e.is_proper_subset(f)).fold(Bits::EMPTY, |acc, e| acc.union(e));
      below == f
    })
    .collect()
}

/// Whether some permutation of atoms maps one family onto the other.
pub fn isomorphic(a: &SetFamilyLattice, b: &SetFamilyLattice) -> bool {
  if a.atoms != b.atoms || a.len() != b.len() {
    return false;
  }
  let target: HashSet<Bits> = b.elements.iter().copied().collect();
  let n = a.atoms;
  let mut perm = vec![0usize; n + 1];
  let mut used = Bits::EMPTY;

  fn rec(
    k: usize,
    n: usize,
    perm: &mut Vec<usize>,
    used: &mut Bits,
    a: &SetFamilyLattice,
    target: &HashSet<Bits>,
  ) -> bool {
    if k > n {
      return a.elements.iter().all(|e| target.contains(&e.iter().map(|x| perm[x]).collect::<Bits>()));
    }
    for img in 1..=n {
      if used.contains(img) {
        continue;
      }
      perm[k] = img;
      used.insert(img);
      // partial check: elements inside {1..k} must already map into the family
      let prefix = Bits::range_inclusive(1, k);
      let ok = a
        .elements
        .iter()
        .filter(|e| e.is_subset(prefix))
        .all(|e| target.contains(&e.iter().map(|x| perm[x]).collect::<Bits>()));
      if ok && rec(k + 1, n, perm, used, a, target) {
        return true;
      }
      used.remove(img);
    }
    false
  }

  rec(1, n, &mut perm, &mut used, a, &target)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::ideal::parse_ideal;

  fn b(v: &[usize]) -> Bits {
    v.iter().copied().collect()
  }

  fn ex44() -> SetFamilyLattice {
    lcm_lattice(&parse_ideal("ab, bcg, cdg, de, efg").unwrap()).unwrap()
  }

  pub(crate) fn ex44_family() -> Vec<Bits> {
    let listed: &[&[usize]] = &[
      &[1],
      &[2],
      &[3],
      &[4],
      &[5],
      &[1, 2],
      &[1, 4],
      &[1, 5],
      &[2, 3],
      &[2, 5],
      &[3, 4],
      &[4, 5],
      &[1, 2, 3],
      &[1, 2, 5],
      &[1, 4, 5],
      &[2, 3, 4],
      &[3, 4, 5],
      &[1, 2, 3, 4],
      &[2, 3, 4, 5],
      &[1, 2, 3, 4, 5],
    ];
    let mut v: Vec<Bits> = listed.iter().map(|e| b(e)).collect();
    v.push(Bits::EMPTY);
    sort_family(v)
  }

  #[test]
  fn example_lcm_lattice_has_21_elements() {
    let l = ex44();
    assert_eq!(l.len(), 21);
    assert_eq!(l.elements(), &ex44_family()[..]);
  }

  #[test]
  fn small_lcm_lattices() {
    let l = lcm_lattice(&parse_ideal("x").unwrap()).unwrap();
    assert_eq!(l.elements(), &[Bits::EMPTY, b(&[1])]);
    let l = lcm_lattice(&parse_ideal("xy, yz").unwrap()).unwrap();
    assert_eq!(l.elements(), &sort_family([Bits::EMPTY, b(&[1]), b(&[2]), b(&[1, 2])])[..]);
  }

  #[test]
  fn hypergraph_lattice_matches_lcm_lattice() {
    let i = parse_ideal("ab, bcg, cdg, de, efg").unwrap();
    let h = Hypergraph::dual_hypergraph(&i).unwrap();
    assert_eq!(lattice_from_hypergraph(&h).unwrap(), lcm_lattice(&i).unwrap());
    let one = Hypergraph::from_edge_lists(1, &[&[1]]).unwrap();
    assert_eq!(lattice_from_hypergraph(&one).unwrap().elements(), &[Bits::EMPTY, b(&[1])]);
    let two = Hypergraph::from_edge_lists(2, &[&[1], &[2], &[1, 2]]).unwrap();
    assert_eq!(lattice_from_hypergraph(&two).unwrap().len(), 4);
    let bad = Hypergraph::from_edge_lists(2, &[&[1, 2]]).unwrap();
    assert_eq!(lattice_from_hypergraph(&bad), Err(Error::NotSeparated(1, 2)));
  }

  #[test]
  fn meet_irreducible_examples() {
    let l = ex44();
    let mi = l.meet_irreducibles();
    assert!(!mi.contains(&b(&[1, 4])));
    let chain = SetFamilyLattice::new(1, [Bits::EMPTY, b(&[1])]).unwrap();
    assert!(chain.meet_irreducibles().contains(&b(&[1])));
    let boolean = SetFamilyLattice::new(2, [Bits::EMPTY, b(&[1]), b(&[2]), b(&[1, 2])]).unwrap();
    assert_eq!(boolean.meet_irreducibles(), vec![b(&[1]), b(&[2]), b(&[1, 2])]);
  }

  #[test]
  fn join_meet_filter() {
    let l = ex44();
    assert_eq!(l.join(b(&[2, 3]), b(&[5])).unwrap(), b(&[2, 3, 4, 5]));
    assert_eq!(l.meet(b(&[1, 2, 3]), b(&[1, 4, 5])).unwrap(), b(&[1]));
    assert_eq!(l.join(b(&[3, 4]), Bits::EMPTY).unwrap(), b(&[3, 4]));
    assert_eq!(l.join(b(&[2, 4]), Bits::EMPTY), Err(Error::NotAnElement(b(&[2, 4]))));
    assert_eq!(l.filter(b(&[1, 4, 5])).unwrap().len(), 2);
    assert_eq!(l.filter(b(&[1])).unwrap().len(), 9);
  }

  #[test]
  fn elements_are_meets_of_irreducibles() {
    assert!(ex44().meets_of_irreducibles());
    let boolean3 = SetFamilyLattice::new(3, (0u128..8).map(|m| Bits(m << 1))).unwrap();
    assert!(boolean3.meets_of_irreducibles());
    assert!(SetFamilyLattice::new(1, [Bits::EMPTY, b(&[1])]).unwrap().meets_of_irreducibles());
  }

  #[test]
  fn validation_rejects_non_lattices() {
    assert!(SetFamilyLattice::new(2, [Bits::EMPTY, b(&[1, 2]), b(&[1])]).is_err());
    assert!(SetFamilyLattice::new(
      3,
      [Bits::EMPTY, b(&[1]), b(&[2]), b(&[3]), b(&[1, 2]), b(&[2, 3]), b(&[1, 2, 3])]
    )
    .is_ok());
    assert!(SetFamilyLattice::new(3, [Bits::EMPTY, b(&[1]), b(&[2]), b(&[3]), b(&[1, 2, 3]), b(&[1, 2, 3])])
      .is_ok());
  }

  #[test]
  fn union_edges() {
    let h = Hypergraph::dual_hypergraph(&parse_ideal("ab, bcg, cdg, de, efg").unwrap()).unwrap();
    assert_eq!(union_edge_elements(&h), [b(&[2, 3, 5])].into_iter().collect());
    let h = Hypergraph::from_edge_lists(2, &[&[1], &[2]]).unwrap();
    assert!(union_edge_elements(&h).is_empty());
  }

  #[test]
  fn closure_matches_scan() {
    let l = ex44();
    for m in 0u128..32 {
      let s = Bits(m << 1);
      let scan = l.elements().iter().copied().filter(|e| s.is_subset(*e)).min_by_key(|e| e.len()).unwrap();
      assert_eq!(l.closure(s), scan);
    }
  }

  #[test]
  fn doc_round_trip_and_dot() {
    let l = ex44();
    let json = serde_json::to_string(&l.to_doc()).unwrap();
    assert!(json.starts_with("{\"atoms\":5,\"elements\":[[],[1],[2],[1,2]"));
    assert_eq!(SetFamilyLattice::from_doc(&serde_json::from_str(&json).unwrap()).unwrap(), l);
    assert!(l.to_dot().contains("rankdir=BT"));
  }

  #[test]
  fn isomorphism_utility() {
    let a = lcm_lattice(&parse_ideal("ab, bc, cd").unwrap()).unwrap();
    let b2 = lcm_lattice(&parse_ideal("bc, ab, cd").unwrap()).unwrap();
    assert_ne!(a, b2);
    assert!(isomorphic(&a, &b2));
    let c = lcm_lattice(&parse_ideal("a, b, c").unwrap()).unwrap();
    assert!(!isomorphic(&a, &c));
  }
}
