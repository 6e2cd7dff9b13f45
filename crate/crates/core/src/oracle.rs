//! Total Betti numbers from the LCM-lattice: `beta_{i,p}` is the rank of the
//! reduced homology `H_{i-2}` of the open interval `(0, p)`, computed over a
//! prime field. Intervals are evaluated through the atom crosscut complex
//! (sets of atoms below `p` whose join stays below `p`), which is homotopy
//! equivalent to the order complex and far smaller; the order complex itself
//! is available for cross-checks.

use std::collections::{BTreeMap, HashMap};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::{
  bits::Bits,
  error::{Error, Result},
  hypergraph::Hypergraph,
  ideal::MonomialIdeal,
  lattice::{lattice_from_hypergraph_capped, lcm_lattice_capped, SetFamilyLattice, MAX_ELEMENTS},
};

/// Per-interval cap on the number of faces.
pub const MAX_CHAINS: usize = 10_000_000;

/// A simplicial complex on vertices `0..n`, faces listed by dimension.
/// The empty face is implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
  pub vertices: Vec<Bits>,
  pub faces: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
  pub fn num_faces(&self) -> usize {
    self.faces.iter().map(Vec::len).sum()
  }

  pub fn dimension(&self) -> isize {
    self.faces.len() as isize - 1
  }

  fn push(&mut self, face: Vec<u32>) {
    let d = face.len() - 1;
    if self.faces.len() <= d {
      self.faces.resize(d + 1, Vec::new());
    }
    self.faces[d].push(face);
  }
}

/// Chains of elements strictly between the bottom and `p`.
pub fn order_complex(l: &SetFamilyLattice, p: Bits) -> Result<SimplicialComplex> {
  if !l.contains(p) {
    return Err(Error::NotAnElement(p));
  }
  if p.is_empty() {
    return Err(Error::Precondition("the interval below the bottom element is undefined".into()));
  }
  let inner: Vec<Bits> =
    l.elements().iter().copied().filter(|q| !q.is_empty() && q.is_proper_subset(p)).collect();
  let mut k = SimplicialComplex { vertices: inner.clone(), faces: Vec::new() };
  let up: Vec<Vec<u32>> = inner
    .iter()
    .map(|a| (0..inner.len() as u32).filter(|&j| a.is_proper_subset(inner[j as usize])).collect())
    .collect();
  let mut count = 0usize;
  let mut stack: Vec<Vec<u32>> = (0..inner.len() as u32).map(|i| vec![i]).collect();
  while let Some(chain) = stack.pop() {
    count += 1;
    if count > MAX_CHAINS {
      return Err(Error::OracleLimit { what: "chains in one interval", count, limit: MAX_CHAINS });
    }
    let last = *chain.last().unwrap() as usize;
    for &j in &up[last] {
      let mut c = chain.clone();
      c.push(j);
      stack.push(c);
    }
    k.push(chain);
  }
  Ok(k)
}

/// Sets of atoms below `p` whose join is strictly below `p`.
pub fn crosscut_complex(l: &SetFamilyLattice, p: Bits) -> Result<SimplicialComplex> {
  if !l.contains(p) {
    return Err(Error::NotAnElement(p));
  }
  let atoms: Vec<usize> = p.iter().collect();
  let mut k =
    SimplicialComplex { vertices: atoms.iter().map(|&a| Bits::singleton(a)).collect(), faces: Vec::new() };
  let mut stack: Vec<(Vec<u32>, Bits)> = Vec::new();
  for (i, &a) in atoms.iter().enumerate() {
    if l.closure(Bits::singleton(a)) != p {
      stack.push((vec![i as u32], Bits::singleton(a)));
    }
  }
  let mut count = 0usize;
  while let Some((face, set)) = stack.pop() {
    count += 1;
    if count > MAX_CHAINS {
      return Err(Error::OracleLimit { what: "faces in one interval", count, limit: MAX_CHAINS });
    }
    let last = *face.last().unwrap() as usize;
    for (j, &a) in atoms.iter().enumerate().skip(last + 1) {
      let grown = set.with(a);
      if l.closure(grown) != p {
        let mut f = face.clone();
        f.push(j as u32);
        stack.push((f, grown));
      }
    }
    k.push(face);
  }
  Ok(k)
}

fn is_prime(p: u32) -> bool {
  p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: u64, p: u64) -> u64 {
  let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
  while e > 0 {
    if e & 1 == 1 {
      r = r * b % p;
    }
    b = b * b % p;
    e >>= 1;
  }
  r
}

/// Rank over GF(p) of a sparse matrix given column by column as `(row, value)`.
fn sparse_rank(columns: Vec<Vec<(u32, u32)>>, p: u32) -> usize {
  let p = p as u64;
  let mut pivots: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
  let mut rank = 0;
  for mut col in columns {
    col.sort_unstable_by_key(|e| e.0);
    col.retain(|e| !(e.1 as u64).is_multiple_of(p));
    while let Some(&(low, val)) = col.last() {
      let Some(piv) = pivots.get(&low) else {
        break;
      };
      // col -= (val / piv_low) * piv
      let factor = val as u64 * inv_mod(piv.last().unwrap().1 as u64, p) % p;
      let mut merged = Vec::with_capacity(col.len() + piv.len());
      let (mut i, mut j) = (0, 0);
      while i < col.len() || j < piv.len() {
        let take_col = j >= piv.len() || (i < col.len() && col[i].0 < piv[j].0);
        let take_piv = i >= col.len() || (j < piv.len() && piv[j].0 < col[i].0);
        if take_col {
          merged.push(col[i]);
          i += 1;
        } else if take_piv {
          merged.push((piv[j].0, ((p - factor * piv[j].1 as u64 % p) % p) as u32));
          j += 1;
        } else {
          let v = (col[i].1 as u64 + p - factor * piv[j].1 as u64 % p) % p;
          if v != 0 {
            merged.push((col[i].0, v as u32));
          }
          i += 1;
          j += 1;
        }
      }
      merged.retain(|e| e.1 != 0);
      col = merged;
    }
    if let Some(&(low, _)) = col.last() {
      pivots.insert(low, col);
      rank += 1;
    }
  }
  rank
}

/// Ranks of `H_d` for `d = -1, 0, 1, ...` (index `d + 1`), with the Euler
/// characteristic checked against the chain ranks.
pub fn reduced_homology_ranks(k: &SimplicialComplex, p: u32) -> Result<Vec<usize>> {
  if !is_prime(p) {
    return Err(Error::NotPrime(p));
  }
  // dims[d + 1] = rank C_d; C_{-1} is spanned by the empty face
  let mut dims = vec![1usize];
  dims.extend(k.faces.iter().map(Vec::len));
  // boundary ranks: bnd[d + 1] = rank of C_d -> C_{d-1}; the map out of C_{-1} is zero
  let mut bnd = vec![0usize; dims.len() + 1];
  if !k.faces.is_empty() {
    bnd[1] = usize::from(!k.faces[0].is_empty());
  }
  for d in 1..k.faces.len() {
    let index: HashMap<&[u32], u32> =
      k.faces[d - 1].iter().enumerate().map(|(i, f)| (f.as_slice(), i as u32)).collect();
    let cols: Vec<Vec<(u32, u32)>> = k.faces[d]
      .iter()
      .map(|f| {
        (0..f.len())
          .map(|drop| {
            let sub: Vec<u32> = f.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| *v).collect();
            let sign = if drop % 2 == 0 { 1 } else { p - 1 };
            (index[sub.as_slice()], sign)
          })
          .collect()
      })
      .collect();
    bnd[d + 1] = sparse_rank(cols, p);
  }
  let ranks: Vec<usize> = (0..dims.len()).map(|i| dims[i] - bnd[i] - bnd[i + 1]).collect();
  let euler = |v: &[usize]| {
    v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>()
  };
  if euler(&dims) != euler(&ranks) {
    return Err(Error::Precondition("Euler characteristic mismatch".into()));
  }
  Ok(ranks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
  #[serde(rename = "char")]
  pub field_char: u32,
  /// `i -> sum over p of beta_{i,p}`.
  pub totals: BTreeMap<usize, usize>,
  pub pd: usize,
  /// Nonzero `beta_{i,p}` keyed by `(i, p)`.
  #[serde(skip)]
  pub entries: BTreeMap<(usize, Bits), usize>,
  /// Intervals whose Euler characteristic was checked.
  #[serde(skip)]
  pub intervals_checked: usize,
}

impl BettiTable {
  pub fn total(&self, i: usize) -> usize {
    self.totals.get(&i).copied().unwrap_or(0)
  }

  /// Per-element breakdown keyed by element support, for JSON output.
  pub fn multidegrees(&self) -> BTreeMap<String, BTreeMap<usize, usize>> {
    let mut out: BTreeMap<String, BTreeMap<usize, usize>> = BTreeMap::new();
    for ((i, p), v) in &self.entries {
      out.entry(p.to_string()).or_default().insert(*i, *v);
    }
    out
  }
}

fn interval_betti(l: &SetFamilyLattice, p: Bits, ch: u32) -> Result<Vec<(usize, usize)>> {
  let k = crosscut_complex(l, p)?;
  let ranks = reduced_homology_ranks(&k, ch)?;
  // ranks[d + 1] = H_d contributes to beta_{d + 2}
  Ok(ranks.into_iter().enumerate().filter(|(_, r)| *r > 0).map(|(i, r)| (i + 1, r)).collect())
}

pub fn betti_table_of_lattice(l: &SetFamilyLattice, ch: u32) -> Result<BettiTable> {
  if !is_prime(ch) {
    return Err(Error::NotPrime(ch));
  }
  let elems: Vec<Bits> = l.elements().iter().copied().filter(|p| !p.is_empty()).collect();
  #[cfg(feature = "parallel")]
  let per: Vec<Result<Vec<(usize, usize)>>> = elems.par_iter().map(|&p| interval_betti(l, p, ch)).collect();
  #[cfg(not(feature = "parallel"))]
  let per: Vec<Result<Vec<(usize, usize)>>> = elems.iter().map(|&p| interval_betti(l, p, ch)).collect();
  let mut entries = BTreeMap::from([((0, Bits::EMPTY), 1)]);
  for (p, r) in elems.iter().zip(per) {
    for (i, v) in r? {
      entries.insert((i, *p), v);
    }
  }
  let mut totals = BTreeMap::new();
  for ((i, _), v) in &entries {
    *totals.entry(*i).or_insert(0) += v;
  }
  let pd = totals.keys().copied().max().unwrap_or(0);
  Ok(BettiTable { field_char: ch, totals, pd, entries, intervals_checked: elems.len() })
}

pub fn betti_table(ideal: &MonomialIdeal, ch: u32) -> Result<BettiTable> {
  betti_table_of_lattice(&lcm_lattice_capped(ideal, MAX_ELEMENTS)?, ch)
}

pub fn oracle_pd(ideal: &MonomialIdeal, ch: u32) -> Result<usize> {
  Ok(betti_table(ideal, ch)?.pd)
}

/// Oracle table of a hypergraph through its lattice. A non-separated
/// hypergraph goes through its ideal, where dominated generators drop out.
pub fn hypergraph_betti_table(h: &Hypergraph, ch: u32) -> Result<BettiTable> {
  if h.is_empty() {
    return Ok(BettiTable {
      field_char: ch,
      totals: BTreeMap::from([(0, 1)]),
      pd: 0,
      entries: BTreeMap::from([((0, Bits::EMPTY), 1)]),
      intervals_checked: 0,
    });
  }
  if h.is_separated() {
    betti_table_of_lattice(&lattice_from_hypergraph_capped(h, MAX_ELEMENTS)?, ch)
  } else {
    betti_table(&h.ideal_from_hypergraph()?, ch)
  }
}

pub fn hypergraph_oracle_pd(h: &Hypergraph, ch: u32) -> Result<usize> {
  Ok(hypergraph_betti_table(h, ch)?.pd)
}
