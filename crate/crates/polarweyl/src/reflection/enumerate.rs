//! Closure enumeration of a finite matrix group.

use super::{ReflectionGroup, ReflectionGroupSpec};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use std::collections::HashMap;

/// Breadth-first closure of the generated group, then a deterministic
/// sort of the element list (lexicographic on canonical matrix entries).
pub fn closure(
    spec: ReflectionGroupSpec,
    generators: Vec<Mat>,
    order_cap: usize,
) -> Result<ReflectionGroup> {
    let dim = generators[0].nrows();
    for (i, g) in generators.iter().enumerate() {
        if g.inverse().is_none() {
            return Err(Error::NonInvertibleGenerator(i));
        }
    }
    let identity = Mat::identity(dim);
    let mut elements = vec![identity.clone()];
    let mut seen: HashMap<Mat, usize> = HashMap::new();
    seen.insert(identity, 0);
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        for g in &generators {
            let prod = elements[idx].mul(g);
            if seen.contains_key(&prod) {
                continue;
            }
            if elements.len() >= order_cap {
                return Err(Error::OrderCapExceeded { cap: order_cap, found: elements.len() });
            }
            seen.insert(prod.clone(), elements.len());
            frontier.push(elements.len());
            elements.push(prod);
        }
    }
    elements.sort();
    let generator_indices = generators
        .iter()
        .map(|g| elements.binary_search(g).expect("generator is an element"))
        .collect();
    Ok(ReflectionGroup::from_parts(spec, dim, elements, generator_indices))
}
