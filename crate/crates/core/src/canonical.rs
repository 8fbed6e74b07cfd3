//! Canonical labelings of small set systems, and through them of matroids.
//!
//! The search is the usual individualization-refinement tree: colour
//! refinement on the element/set incidence structure, individualize an
//! element of the first non-singleton cell, repeat until the colouring is
//! discrete, and keep the smallest relabeled set system over all leaves.
//! Automorphisms found along the way prune equivalent branches.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Matroids larger than this are rejected by [`canonical_form`].
pub const DEFAULT_LIMIT: usize = 10;

/// A set system relabeled into canonical position, sorted.
pub type Certificate = Vec<(u8, u128)>;

/// Result of a canonical labeling: `perm[x]` is the new label of element `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub perm: Vec<usize>,
    pub certificate: Certificate,
}

fn relabel(sets: &[(u8, Subset)], perm: &[usize]) -> Certificate {
    let mut out: Certificate = sets.iter().map(|&(tag, s)| (tag, s.map(perm).bits())).collect();
    out.sort_unstable();
    out
}

/// Refines `colors` until the number of cells stops growing. Colours are
/// renumbered to `0..cells` in an order that depends only on the structure.
fn refine(n: usize, sets: &[(u8, Subset)], colors: &mut Vec<usize>) {
    compact(colors);
    let mut cells = count_cells(colors);
    loop {
        let set_sigs: Vec<(u8, Vec<usize>)> = sets
            .iter()
            .map(|&(tag, s)| {
                let mut c: Vec<usize> = s.iter().map(|e| colors[e]).collect();
                c.sort_unstable();
                (tag, c)
            })
            .collect();
        let set_colors = rank_signatures(&set_sigs);
        let elem_sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|e| {
                let mut c: Vec<usize> = sets
                    .iter()
                    .zip(&set_colors)
                    .filter(|((_, s), _)| s.contains(e))
                    .map(|(_, &c)| c)
                    .collect();
                c.sort_unstable();
                (colors[e], c)
            })
            .collect();
        *colors = rank_signatures(&elem_sigs);
        let next = count_cells(colors);
        if next == cells {
            return;
        }
        cells = next;
    }
}

fn rank_signatures<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

fn compact(colors: &mut Vec<usize>) {
    *colors = rank_signatures(colors);
}

fn count_cells(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// The smallest colour class with more than one element.
fn target_cell(colors: &[usize]) -> Option<Vec<usize>> {
    let mut counts = vec![0usize; colors.len()];
    for &c in colors {
        counts[c] += 1;
    }
    let c = (0..counts.len()).find(|&c| counts[c] > 1)?;
    Some((0..colors.len()).filter(|&e| colors[e] == c).collect())
}

fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let cv = colors[v];
    colors
        .iter()
        .enumerate()
        .map(|(x, &c)| 2 * c + usize::from(c == cv && x != v))
        .collect()
}

struct Leaf {
    path: Vec<usize>,
    perm: Vec<usize>,
    certificate: Certificate,
}

struct Search<'a> {
    n: usize,
    sets: &'a [(u8, Subset)],
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

impl Search<'_> {
    /// Explores the subtree below `path`. A returned level asks the caller to
    /// abandon everything below that level, because an automorphism maps the
    /// current branch onto one already explored.
    fn explore(&mut self, path: &mut Vec<usize>, colors: Vec<usize>) -> Option<usize> {
        let Some(cell) = target_cell(&colors) else {
            return self.visit_leaf(path, &colors);
        };
        let level = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if self.equivalent_to_explored(path, &cell, &explored, w) {
                continue;
            }
            explored.push(w);
            let mut child = individualize(&colors, w);
            refine(self.n, self.sets, &mut child);
            path.push(w);
            let jump = self.explore(path, child);
            path.pop();
            if let Some(target) = jump {
                if target < level {
                    return Some(target);
                }
            }
        }
        None
    }

    /// Whether some automorphism fixing `path` pointwise maps `w` to an
    /// element whose subtree was already searched.
    fn equivalent_to_explored(&self, path: &[usize], cell: &[usize], explored: &[usize], w: usize) -> bool {
        if explored.is_empty() {
            return false;
        }
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|g| path.iter().all(|&v| g[v] == v))
            .collect();
        if gens.is_empty() {
            return false;
        }
        // Orbit of w under the group generated by gens.
        let mut orbit = vec![w];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &gens {
                let y = g[x];
                if !orbit.contains(&y) {
                    orbit.push(y);
                }
            }
            i += 1;
        }
        debug_assert!(orbit.iter().all(|x| cell.contains(x)));
        orbit.iter().any(|x| explored.contains(x))
    }

    fn visit_leaf(&mut self, path: &[usize], colors: &[usize]) -> Option<usize> {
        let perm = colors.to_vec();
        let certificate = relabel(self.sets, &perm);
        let leaf = Leaf {
            path: path.to_vec(),
            perm,
            certificate,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                perm: leaf.perm.clone(),
                certificate: leaf.certificate.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        let best = self.best.as_ref().unwrap();
        for other in [first, best] {
            if other.certificate == leaf.certificate {
                let inv = inverse(&leaf.perm);
                let gamma: Vec<usize> = other.perm.iter().map(|&p| inv[p]).collect();
                let level = common_prefix(&other.path, &leaf.path);
                self.automorphisms.push(gamma);
                return Some(level);
            }
        }
        if leaf.certificate < best.certificate {
            self.best = Some(leaf);
        }
        None
    }
}

/// Canonical labeling of a set system on `0..n`. Each set carries a tag that
/// relabelings must preserve.
pub fn canonical_labeling(n: usize, sets: &[(u8, Subset)]) -> Labeling {
    let mut search = Search {
        n,
        sets,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut colors = vec![0; n];
    refine(n, sets, &mut colors);
    search.explore(&mut Vec::new(), colors);
    let best = search.best.expect("the search tree has at least one leaf");
    Labeling {
        perm: best.perm,
        certificate: best.certificate,
    }
}

/// Byte encoding shared by all matroids isomorphic to `m`.
pub fn canonical_form(m: &Matroid) -> Result<Vec<u8>> {
    canonical_form_with_limit(m, DEFAULT_LIMIT)
}

pub fn canonical_form_with_limit(m: &Matroid, limit: usize) -> Result<Vec<u8>> {
    if m.n() > limit {
        return Err(Error::TooLarge { n: m.n(), limit });
    }
    let sets: Vec<(u8, Subset)> = m
        .flats_by_rank()
        .iter()
        .enumerate()
        .flat_map(|(r, level)| level.iter().map(move |&f| (r as u8, f)))
        .collect();
    let labeling = canonical_labeling(m.n(), &sets);
    Ok(encode(m.n(), &labeling.certificate))
}

/// `n`, then each `(tag, set)` as one tag byte and the set as 16 big-endian
/// bytes.
pub fn encode(n: usize, certificate: &Certificate) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + 17 * certificate.len());
    out.push(n as u8);
    for &(tag, bits) in certificate {
        out.push(tag);
        out.extend_from_slice(&bits.to_be_bytes());
    }
    out
}
