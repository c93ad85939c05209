//! Canonical forms of polytope lattices via their vertex-facet incidences.
//!
//! A polytope lattice is determined by which vertices lie on which facets, so
//! a canonical relabeling of the incidence structure is a canonical form of
//! the lattice. Labelings are searched by colour refinement with
//! individualization; every branch is explored and the lexicographically
//! smallest relabeled facet list wins. Fine for the small lattices it is used
//! on, exponential in the automorphism group size.

use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub dim: i32,
    pub n_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

pub(crate) fn canonical_form(dim: i32, n_vertices: usize, facets: &[Vec<usize>]) -> CanonicalForm {
    let incidence: Vec<Vec<usize>> = {
        let mut inc = vec![Vec::new(); n_vertices];
        for (fi, f) in facets.iter().enumerate() {
            for &v in f {
                inc[v].push(fi);
            }
        }
        inc
    };
    let colours = refine(vec![0; n_vertices], facets, &incidence);
    let mut best: Option<Vec<Vec<usize>>> = None;
    search(colours, facets, &incidence, &mut best);
    CanonicalForm { dim, n_vertices, facets: best.unwrap_or_default() }
}

/// Replaces each signature by its rank among the distinct signatures.
fn rank_signatures<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(s).expect("present"))
        .collect()
}

fn count_classes(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn refine(mut colours: Vec<usize>, facets: &[Vec<usize>], incidence: &[Vec<usize>]) -> Vec<usize> {
    loop {
        let facet_sigs: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                let mut s: Vec<usize> = f.iter().map(|&v| colours[v]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        let facet_colours = rank_signatures(&facet_sigs);
        let vertex_sigs: Vec<(usize, Vec<usize>)> = incidence
            .iter()
            .enumerate()
            .map(|(v, fs)| {
                let mut s: Vec<usize> = fs.iter().map(|&f| facet_colours[f]).collect();
                s.sort_unstable();
                (colours[v], s)
            })
            .collect();
        let next = rank_signatures(&vertex_sigs);
        if count_classes(&next) == count_classes(&colours) {
            return next;
        }
        colours = next;
    }
}

fn search(
    colours: Vec<usize>,
    facets: &[Vec<usize>],
    incidence: &[Vec<usize>],
    best: &mut Option<Vec<Vec<usize>>>,
) {
    let mut cells: HashMap<usize, Vec<usize>> = HashMap::new();
    for (v, &c) in colours.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let target = cells
        .iter()
        .filter(|(_, members)| members.len() > 1)
        .map(|(&c, _)| c)
        .min();
    let Some(target) = target else {
        let mut relabeled: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| colours[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        relabeled.sort();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            *best = Some(relabeled);
        }
        return;
    };
    for &v in &cells[&target] {
        // Individualize v: it keeps its colour, the rest of its cell moves up.
        let split: Vec<usize> = colours
            .iter()
            .enumerate()
            .map(|(u, &c)| 2 * c + usize::from(c == target && u != v))
            .collect();
        let refined = refine(rank_signatures(&split), facets, incidence);
        search(refined, facets, incidence, best);
    }
}
