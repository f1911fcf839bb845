//! Reflection classification: fixed hyperplanes, rotation eigenvalues,
//! primitivity, and hyperplane orbits under the group action.

use super::ReflectionGroup;
use crate::cyclotomic::CycNum;
use crate::linalg::Mat;
use std::collections::HashMap;

/// One element with a codimension-one fixed space.
#[derive(Debug, Clone)]
pub struct Reflection {
    /// Index of the element in the group's deterministic element order.
    pub element: usize,
    /// Basis of the fixed hyperplane (kernel of `g - 1`), `dim - 1` rows.
    pub hyperplane: Vec<Vec<CycNum>>,
    /// The rotation eigenvalue (the determinant of the element).
    pub eigenvalue: CycNum,
    /// Multiplicative order of the eigenvalue.
    pub order: u32,
    /// No element fixes the same hyperplane with larger rotation order.
    pub primitive: bool,
    /// Id of the hyperplane within the table.
    pub hyperplane_id: usize,
    /// Conjugacy-orbit id of the hyperplane.
    pub orbit: usize,
}

/// All reflections of one hyperplane orbit.
#[derive(Debug, Clone)]
pub struct HyperplaneOrbit {
    pub id: usize,
    /// Hyperplane ids in the orbit.
    pub hyperplanes: Vec<usize>,
    /// The primitive order: the largest rotation order over the orbit
    /// (equal at every hyperplane of the orbit).
    pub order: u32,
    /// Indices into the reflection list.
    pub reflections: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ReflectionTable {
    pub reflections: Vec<Reflection>,
    pub orbits: Vec<HyperplaneOrbit>,
}

impl ReflectionTable {
    /// Reflection indices fixing the given hyperplane id.
    pub fn by_hyperplane(&self, hyperplane_id: usize) -> Vec<usize> {
        self.reflections
            .iter()
            .enumerate()
            .filter(|(_, r)| r.hyperplane_id == hyperplane_id)
            .map(|(i, _)| i)
            .collect()
    }

    /// The orbit id of a group element, if that element is a reflection.
    pub fn orbit_of_element(&self, element: usize) -> Option<usize> {
        self.reflections.iter().find(|r| r.element == element).map(|r| r.orbit)
    }
}

/// Canonical key of a subspace given by spanning rows: the reduced row
/// echelon form of the row matrix.
fn subspace_key(rows: &[Vec<CycNum>]) -> Mat {
    let mut m = Mat::from_rows(rows.to_vec());
    m.rref();
    m
}

/// Scan the element list for codimension-one fixed spaces and classify the
/// result.
pub fn find_reflections(group: &ReflectionGroup) -> ReflectionTable {
    let dim = group.dim();
    let mut reflections = Vec::new();
    let mut hyperplane_ids: HashMap<Mat, usize> = HashMap::new();
    let mut hyperplane_bases: Vec<Vec<Vec<CycNum>>> = Vec::new();

    for (idx, g) in group.elements().iter().enumerate() {
        if idx == group.identity_index() {
            continue;
        }
        let g_minus_one = g.sub(&Mat::identity(dim));
        let kernel = g_minus_one.kernel_basis();
        if kernel.len() != dim - 1 {
            continue;
        }
        let eigenvalue = g.det();
        let order = eigenvalue
            .root_of_unity_order()
            .expect("finite-order element has root-of-unity determinant");
        let key = subspace_key(&kernel);
        let hyperplane_id = *hyperplane_ids.entry(key).or_insert_with(|| {
            hyperplane_bases.push(kernel.clone());
            hyperplane_bases.len() - 1
        });
        reflections.push(Reflection {
            element: idx,
            hyperplane: kernel,
            eigenvalue,
            order,
            primitive: false, // filled below
            hyperplane_id,
            orbit: usize::MAX,
        });
    }

    // primitivity: maximal rotation order on the shared hyperplane
    let mut max_order: HashMap<usize, u32> = HashMap::new();
    for r in &reflections {
        let e = max_order.entry(r.hyperplane_id).or_insert(0);
        *e = (*e).max(r.order);
    }
    for r in &mut reflections {
        r.primitive = r.order == max_order[&r.hyperplane_id];
    }

    // hyperplane orbits under the action of the group generators
    let n_hyper = hyperplane_bases.len();
    let key_to_id: HashMap<Mat, usize> = hyperplane_bases
        .iter()
        .enumerate()
        .map(|(i, b)| (subspace_key(b), i))
        .collect();
    let mut orbit_of: Vec<Option<usize>> = vec![None; n_hyper];
    let mut orbits: Vec<HyperplaneOrbit> = Vec::new();
    for start in 0..n_hyper {
        if orbit_of[start].is_some() {
            continue;
        }
        let orbit_id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = Some(orbit_id);
        let mut stack = vec![start];
        while let Some(h) = stack.pop() {
            for &gi in group.generator_indices() {
                let g = group.element(gi);
                let image: Vec<Vec<CycNum>> =
                    hyperplane_bases[h].iter().map(|v| g.apply(v)).collect();
                let img_id = key_to_id[&subspace_key(&image)];
                if orbit_of[img_id].is_none() {
                    orbit_of[img_id] = Some(orbit_id);
                    members.push(img_id);
                    stack.push(img_id);
                }
            }
        }
        members.sort_unstable();
        orbits.push(HyperplaneOrbit {
            id: orbit_id,
            hyperplanes: members,
            order: 0,
            reflections: Vec::new(),
        });
    }
    for (i, r) in reflections.iter_mut().enumerate() {
        let orbit = orbit_of[r.hyperplane_id].expect("every hyperplane was assigned");
        r.orbit = orbit;
        orbits[orbit].reflections.push(i);
        orbits[orbit].order = orbits[orbit].order.max(r.order);
    }

    ReflectionTable { reflections, orbits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::{CoxeterFamily, ReflectionGroupSpec};

    fn table_for(spec: ReflectionGroupSpec) -> (ReflectionGroup, ReflectionTable) {
        let g = ReflectionGroup::enumerate(&spec, 20_000).unwrap();
        let t = find_reflections(&g);
        (g, t)
    }

    #[test]
    fn a2_reflections() {
        let (_, t) = table_for(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank: 2 });
        assert_eq!(t.reflections.len(), 3);
        assert!(t.reflections.iter().all(|r| r.order == 2 && r.primitive));
        assert_eq!(t.orbits.len(), 1);
        assert_eq!(t.orbits[0].order, 2);
    }

    #[test]
    fn cyclic4_primitivity() {
        let (_, t) = table_for(ReflectionGroupSpec::Cyclic { order: 4 });
        // diag(i), diag(-1), diag(-i) are the non-identity elements
        assert_eq!(t.reflections.len(), 3);
        let orders: Vec<u32> = t.reflections.iter().map(|r| r.order).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        for r in &t.reflections {
            assert_eq!(r.primitive, r.order == 4, "order-2 element is not primitive");
        }
        assert_eq!(t.orbits.len(), 1);
        assert_eq!(t.orbits[0].order, 4);
    }

    #[test]
    fn g412_two_orbits() {
        let (g, t) = table_for(ReflectionGroupSpec::Imprimitive { m: 4, n: 2 });
        assert_eq!(g.order(), 32);
        // 6 diagonal reflections (2 hyperplanes) + 4 permutation-type
        assert_eq!(t.reflections.len(), 10);
        assert_eq!(t.orbits.len(), 2);
        let mut orders: Vec<u32> = t.orbits.iter().map(|o| o.order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 4]);
        let diag = t.orbits.iter().find(|o| o.order == 4).unwrap();
        let perm = t.orbits.iter().find(|o| o.order == 2).unwrap();
        assert_eq!(diag.hyperplanes.len(), 2);
        assert_eq!(diag.reflections.len(), 6);
        // four anti-diagonal lines {(x, ax)}, one order-2 reflection each
        assert_eq!(perm.hyperplanes.len(), 4);
        assert_eq!(perm.reflections.len(), 4);
        // primitive diagonal reflections have order 4
        for &ri in &diag.reflections {
            let r = &t.reflections[ri];
            assert_eq!(r.primitive, r.order == 4);
        }
        for &ri in &perm.reflections {
            assert!(t.reflections[ri].primitive);
        }
    }

    #[test]
    fn positive_root_counts() {
        for (rank, expected) in [(2usize, 3usize), (3, 6), (4, 10)] {
            let (_, t) =
                table_for(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank });
            assert_eq!(t.reflections.len(), expected, "A{rank}");
        }
        for (rank, expected) in [(2usize, 4usize), (3, 9), (4, 16)] {
            let (_, t) =
                table_for(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::B, rank });
            assert_eq!(t.reflections.len(), expected, "B{rank}");
        }
    }

    #[test]
    fn orbit_invariance_of_primitivity_and_order() {
        let (_, t) = table_for(ReflectionGroupSpec::Imprimitive { m: 3, n: 2 });
        for orbit in &t.orbits {
            let orders: Vec<u32> =
                orbit.reflections.iter().map(|&i| t.reflections[i].order).collect();
            let max = *orders.iter().max().unwrap();
            for &i in &orbit.reflections {
                let r = &t.reflections[i];
                assert_eq!(r.primitive, r.order == max);
            }
        }
    }
}
