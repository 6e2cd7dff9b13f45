#![allow(dead_code)]
//! Reference Betti numbers computed straight from generator supports.
//!
//! The LCM lattice is the set of unions of generator supports (variables as
//! bits). For an element `m` the open interval below it is replaced by the
//! nerve of its coatoms: a set of coatoms is a face when its intersection
//! still contains a generator. `beta_{i,m}(R/I)` is the reduced GF(2)
//! homology of that nerve in degree `i - 2`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use hyperpd::{
  coord::{Exponents, Labeling},
  lattice::SetFamilyLattice,
  Bits, Hypergraph, MonomialIdeal, Ring,
};
use rand::Rng;

pub type Support = u128;

pub fn minimal(gens: &[Support]) -> Vec<Support> {
  let set: BTreeSet<Support> = gens.iter().copied().filter(|&g| g != 0).collect();
  set.iter().copied().filter(|&g| !set.iter().any(|&h| h != g && h & g == h)).collect()
}

pub fn lcm_closure(gens: &[Support]) -> BTreeSet<Support> {
  let mut out: BTreeSet<Support> = gens.iter().copied().collect();
  loop {
    let mut fresh = vec![];
    for &a in &out {
      for &g in gens {
        if !out.contains(&(a | g)) {
          fresh.push(a | g);
        }
      }
    }
    if fresh.is_empty() {
      return out;
    }
    out.extend(fresh);
  }
}

fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
  let mut rank = 0;
  let cols = rows.first().map_or(0, |r| r.len() * 64);
  for c in 0..cols {
    let (w, b) = (c / 64, 1u64 << (c % 64));
    let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else { continue };
    rows.swap(rank, p);
    let pivot = rows[rank].clone();
    for r in 0..rows.len() {
      if r != rank && rows[r][w] & b != 0 {
        for (x, y) in rows[r].iter_mut().zip(&pivot) {
          *x ^= y;
        }
      }
    }
    rank += 1;
  }
  rank
}

/// Reduced homology ranks of a simplicial complex given by its faces as
/// bitmasks (the empty face included), indexed by dimension + 1.
fn reduced_homology(faces: &[u32]) -> Vec<usize> {
  let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
  let mut by_size: Vec<Vec<u32>> = vec![vec![]; top + 1];
  for &f in faces {
    by_size[f.count_ones() as usize].push(f);
  }
  let index: Vec<HashMap<u32, usize>> =
    by_size.iter().map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect()).collect();
  let mut ranks = vec![0; top + 2];
  for s in 1..=top {
    let words = by_size[s - 1].len().div_ceil(64);
    let rows = by_size[s]
      .iter()
      .map(|&f| {
        let mut row = vec![0u64; words];
        let mut rest = f;
        while rest != 0 {
          let bit = rest & rest.wrapping_neg();
          let j = index[s - 1][&(f & !bit)];
          row[j / 64] |= 1 << (j % 64);
          rest &= rest - 1;
        }
        row
      })
      .collect();
    ranks[s] = gf2_rank(rows);
  }
  (0..=top).map(|s| by_size[s].len() - ranks[s] - ranks[s + 1]).collect()
}

/// Total Betti numbers of `R/I`, keyed by homological degree.
pub fn betti_totals(gens: &[Support]) -> BTreeMap<usize, usize> {
  let gens = minimal(gens);
  let lattice = lcm_closure(&gens);
  let mut totals = BTreeMap::from([(0, 1)]);
  for &m in &lattice {
    let below: Vec<Support> = lattice.iter().copied().filter(|&x| x != m && x & m == x).collect();
    let coatoms: Vec<Support> =
      below.iter().copied().filter(|&x| !below.iter().any(|&y| y != x && y & x == x)).collect();
    assert!(coatoms.len() < 32, "interval too wide for the reference oracle");
    let faces: Vec<u32> = (0u32..1 << coatoms.len())
      .filter(|&s| {
        let meet = (0..coatoms.len()).filter(|i| s >> i & 1 == 1).fold(m, |a, i| a & coatoms[i]);
        s == 0 || gens.iter().any(|&g| g & !meet == 0)
      })
      .collect();
    for (k, &r) in reduced_homology(&faces).iter().enumerate() {
      if r > 0 {
        *totals.entry(k + 1).or_default() += r;
      }
    }
  }
  totals
}

pub fn pd(gens: &[Support]) -> usize {
  betti_totals(gens).keys().copied().max().unwrap_or(0)
}

/// Generator supports of the ideal whose dual hypergraph is `h`: vertex `v`
/// divides by the variable of every edge containing it.
pub fn hypergraph_supports(h: &Hypergraph) -> Vec<Support> {
  let edges: Vec<Bits> = h.edges().collect();
  assert!(edges.len() <= 128);
  h.vertices()
    .map(|v| edges.iter().enumerate().filter(|(_, e)| e.contains(v)).fold(0, |a, (i, _)| a | 1 << i))
    .collect()
}

pub fn hypergraph_pd(h: &Hypergraph) -> usize {
  if h.is_empty() {
    return 0;
  }
  pd(&hypergraph_supports(h))
}

pub fn bits(v: &[usize]) -> Bits {
  v.iter().copied().collect()
}

/// Random square-free generator supports on `vars` variables, minimalized.
pub fn random_ideal<R: Rng>(rng: &mut R, max_gens: usize, vars: usize) -> Vec<Bits> {
  loop {
    let n = rng.gen_range(1..=max_gens);
    let raw: Vec<Support> = (0..n).map(|_| rng.gen_range(1..(1u128 << vars))).collect();
    let gens = minimal(&raw);
    if !gens.is_empty() {
      return gens.into_iter().map(Bits).collect();
    }
  }
}

/// Random tree on `1..=n` with optional singletons and higher edges.
pub fn random_tree_hypergraph<R: Rng>(rng: &mut R, n: usize, closed: f64, higher: usize) -> Hypergraph {
  let mut edges = vec![];
  for v in 2..=n {
    edges.push(Bits::singleton(rng.gen_range(1..v)).with(v));
  }
  for v in 1..=n {
    if rng.gen_bool(closed) {
      edges.push(Bits::singleton(v));
    }
  }
  for _ in 0..higher {
    let size = rng.gen_range(3..=4.min(n));
    let mut e = Bits::EMPTY;
    while e.len() < size {
      e = e.with(rng.gen_range(1..=n));
    }
    edges.push(e);
  }
  Hypergraph::new(1..=n, edges).unwrap()
}

/// A 2-star on `1..=n`: joint 1, `short` branches of length 1 and `long`
/// branches of length 2, with the listed vertices closed.
pub fn two_star(short: usize, long: usize, closed: &[usize]) -> Hypergraph {
  let mut edges = vec![];
  let mut next = 2;
  for _ in 0..short {
    edges.push(bits(&[1, next]));
    next += 1;
  }
  for _ in 0..long {
    edges.push(bits(&[1, next]));
    edges.push(bits(&[next, next + 1]));
    next += 2;
  }
  edges.extend(closed.iter().map(|&v| Bits::singleton(v)));
  Hypergraph::new(1..next, edges).unwrap()
}

/// Branch end vertices of [`two_star`].
pub fn two_star_ends(short: usize, long: usize) -> Vec<usize> {
  (2..2 + short).chain((0..long).map(|i| 2 + short + 2 * i + 1)).collect()
}

/// String `1 - 2 - ... - mu` with open interior vertices and closed ends.
pub fn open_string(mu: usize) -> Hypergraph {
  let mut edges: Vec<Bits> = (1..mu).map(|i| bits(&[i, i + 1])).collect();
  edges.push(Bits::singleton(1));
  edges.push(Bits::singleton(mu));
  Hypergraph::new(1..=mu, edges).unwrap()
}

/// LCM lattice built from generator unions, written in generator-index form.
pub fn reference_lattice(i: &MonomialIdeal) -> BTreeSet<Bits> {
  let gens: Vec<u128> = i.supports().iter().map(|b| b.0).collect();
  let mut out: BTreeSet<Bits> = lcm_closure(&gens)
    .into_iter()
    .map(|m| (1..=gens.len()).filter(|&j| gens[j - 1] & m == gens[j - 1]).collect())
    .collect();
  out.insert(Bits::EMPTY);
  out
}

/// Random valid labelling: a fresh variable per meet-irreducible with a random
/// exponent, plus extra variables spread along one chain.
pub fn random_labeling(l: &SetFamilyLattice, seed: &[u32]) -> Labeling {
  let mi = l.proper_meet_irreducibles();
  let extra = 2;
  let ring = Ring::fresh(mi.len() + extra).unwrap();
  let mut lab = Labeling::new(&ring);
  let mut s = seed.iter().copied().cycle();
  for (k, m) in mi.iter().enumerate() {
    let e = 1 + s.next().unwrap() % 3;
    let mut x = Exponents::variable(k);
    x.0[k] = e;
    lab.add(*m, &x);
  }
  let mut chain = vec![l.bottom()];
  while let Some(&next) = l.upper_covers(*chain.last().unwrap()).get(s.next().unwrap() as usize % 2) {
    chain.push(next);
  }
  for k in 0..extra {
    for c in &chain {
      if s.next().unwrap() % 2 == 0 {
        lab.add(*c, &Exponents::variable(mi.len() + k));
      }
    }
  }
  lab
}
