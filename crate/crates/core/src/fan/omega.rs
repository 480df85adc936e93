//! The glueing relation `(σ,i) ∼ (τ,j) ⇔ σ = τ ∈ Δ_ij`, its class set
//! `Ω(S)`, the orbit order on classes, and the ray classes `Λ`.

use std::collections::HashMap;

use itertools::Itertools;

use crate::cone::Cone;

use super::{FanError, SystemOfFans};

/// Index of a class inside its [`GluedSystem`].
pub type ClassId = usize;

/// One element of `Ω(S)`: a cone together with every label under which it
/// is identified. Members are sorted by label position, so `labels[0]` is
/// the canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaClass {
    pub cone: Cone,
    pub labels: Vec<usize>,
}

impl OmegaClass {
    pub fn representative_label(&self) -> usize {
        self.labels[0]
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A validated system of fans with its glued cone poset precomputed.
#[derive(Debug, Clone)]
pub struct GluedSystem {
    system: SystemOfFans,
    classes: Vec<OmegaClass>,
    lookup: HashMap<(Cone, usize), ClassId>,
    /// `order[a][b]` is `a ⪯ b`.
    order: Vec<Vec<bool>>,
    lambda: Vec<ClassId>,
}

impl GluedSystem {
    pub fn new(system: SystemOfFans) -> Result<Self, FanError> {
        let report = system.validate();
        if !report.valid {
            return Err(FanError::InvalidSystem(report));
        }

        let labeled: Vec<(Cone, usize)> = (0..system.len())
            .flat_map(|i| system.fan(i, i).cones().map(move |c| (c.clone(), i)))
            .collect();
        let mut uf = UnionFind::new(labeled.len());
        let mut by_cone: HashMap<&Cone, Vec<usize>> = HashMap::new();
        for (k, (c, _)) in labeled.iter().enumerate() {
            by_cone.entry(c).or_default().push(k);
        }
        for members in by_cone.values() {
            for (x, y) in members.iter().tuple_combinations() {
                let (c, i) = &labeled[*x];
                let j = labeled[*y].1;
                if system.fan(*i, j).contains(c) {
                    uf.union(*x, *y);
                }
            }
        }

        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for k in 0..labeled.len() {
            groups.entry(uf.find(k)).or_default().push(k);
        }
        let mut classes: Vec<OmegaClass> = groups
            .into_values()
            .map(|ks| {
                let mut labels: Vec<usize> = ks.iter().map(|&k| labeled[k].1).collect();
                labels.sort_unstable();
                OmegaClass {
                    cone: labeled[ks[0]].0.clone(),
                    labels,
                }
            })
            .collect();
        // Union-find closes the relation transitively; the glueing relation
        // must already be transitive, so every pair is rechecked directly.
        for class in &classes {
            for (&i, &j) in class.labels.iter().tuple_combinations() {
                if !system.fan(i, j).contains(&class.cone) {
                    return Err(FanError::TransitivityViolation {
                        cone: class.cone.clone(),
                        left: system.label(i).to_string(),
                        right: system.label(j).to_string(),
                    });
                }
            }
        }
        classes.sort_by(|a, b| {
            (a.cone.dim(), a.labels[0], a.cone.rays()).cmp(&(b.cone.dim(), b.labels[0], b.cone.rays()))
        });

        let mut lookup = HashMap::new();
        for (id, class) in classes.iter().enumerate() {
            for &l in &class.labels {
                lookup.insert((class.cone.clone(), l), id);
            }
        }

        let n = classes.len();
        let mut order = vec![vec![false; n]; n];
        for (b, class) in classes.iter().enumerate() {
            // a ⪯ b iff some member (σ,i) of b has a face τ with [τ,i] = a.
            for &i in &class.labels {
                for tau in class.cone.faces() {
                    let a = lookup[&(tau, i)];
                    order[a][b] = true;
                }
            }
        }
        let lambda = (0..n).filter(|&c| classes[c].dim() == 1).collect();
        Ok(GluedSystem {
            system,
            classes,
            lookup,
            order,
            lambda,
        })
    }

    pub fn system(&self) -> &SystemOfFans {
        &self.system
    }

    pub fn ambient_rank(&self) -> usize {
        self.system.ambient_rank()
    }

    pub fn classes(&self) -> &[OmegaClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &OmegaClass {
        &self.classes[id]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `[σ, i]`, if `σ ∈ Δ_ii`.
    pub fn class_of(&self, cone: &Cone, label: usize) -> Option<ClassId> {
        self.lookup.get(&(cone.clone(), label)).copied()
    }

    /// Canonical identifier `"<label>:<ray>;<ray>..."` with rays written as
    /// comma-separated coordinates, taken from the least member.
    pub fn class_name(&self, id: ClassId) -> String {
        let c = &self.classes[id];
        let rays = c.cone.rays().iter().map(|r| r.iter().join(",")).join(";");
        format!("{}:{}", self.system.label(c.labels[0]), rays)
    }

    pub fn class_by_name(&self, name: &str) -> Option<ClassId> {
        (0..self.classes.len()).find(|&id| self.class_name(id) == name)
    }

    pub fn origin_class(&self) -> ClassId {
        self.class_of(&Cone::zero(self.ambient_rank()), 0)
            .expect("the zero cone lies in every fan")
    }

    /// `a ⪯ b`.
    pub fn leq(&self, a: ClassId, b: ClassId) -> bool {
        self.order[a][b]
    }

    /// Every `b ⪯ a`. These orbits make up the invariant affine open set
    /// attached to `a`; `a`'s orbit lies in the closure of each of them.
    pub fn downset(&self, a: ClassId) -> Vec<ClassId> {
        (0..self.classes.len()).filter(|&b| self.order[b][a]).collect()
    }

    /// `Λ`, the ray classes, in class order.
    pub fn lambda(&self) -> &[ClassId] {
        &self.lambda
    }

    /// Position of a class within `Λ`.
    pub fn lambda_position(&self, id: ClassId) -> Option<usize> {
        self.lambda.iter().position(|&c| c == id)
    }

    /// Classes of the maximal cones of each diagonal fan, deduplicated.
    pub fn maximal_chart_classes(&self) -> Vec<ClassId> {
        let mut out: Vec<ClassId> = (0..self.system.len())
            .flat_map(|i| {
                self.system
                    .fan(i, i)
                    .maximal_cones()
                    .into_iter()
                    .map(move |c| (c, i))
            })
            .map(|(c, i)| self.lookup[&(c, i)])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Classes of the rays of `σ` viewed under label `i`.
    pub fn ray_classes_of(&self, cone: &Cone, label: usize) -> Vec<ClassId> {
        cone.rays()
            .iter()
            .map(|r| {
                let ray = Cone::ray(r).expect("ray generators are nonzero");
                self.lookup[&(ray, label)]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::golden;

    #[test]
    fn double_origin_classes() {
        let g = GluedSystem::new(golden::double_origin()).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.lambda().len(), 2);
        let names: Vec<String> = g.lambda().iter().map(|&c| g.class_name(c)).collect();
        assert_eq!(names, vec!["1:1", "2:1"]);
        let (a, b) = (g.lambda()[0], g.lambda()[1]);
        assert!(!g.leq(a, b) && !g.leq(b, a));
        assert!(g.leq(a, a));
        let o = g.origin_class();
        assert!(g.leq(o, a) && g.leq(o, b));
        assert_eq!(g.downset(a), vec![o, a]);
        assert_eq!(g.downset(o), vec![o]);
    }

    #[test]
    fn doubled_axes_classes() {
        let g = GluedSystem::new(golden::a3_doubled_axes()).unwrap();
        assert_eq!(g.len(), 12);
        assert_eq!(g.lambda().len(), 3);
        let top = g.maximal_chart_classes();
        assert_eq!(top.len(), 2);
        assert_eq!(g.downset(top[0]).len(), 8);
    }

    #[test]
    fn homogeneous_spectra_lambda() {
        let g = GluedSystem::new(golden::homogeneous_spectra()).unwrap();
        let names: Vec<String> = g.lambda().iter().map(|&c| g.class_name(c)).collect();
        assert_eq!(names, vec!["1:1,0", "1:1,1", "2:0,1", "4:-1,-1"]);
    }

    #[test]
    fn singleton_is_the_face_poset() {
        let cone = Cone::from_generators(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]], 3).unwrap();
        let fan = Fan::irreducible(&cone);
        let g = GluedSystem::new(SystemOfFans::single("x", fan.clone())).unwrap();
        assert_eq!(g.len(), fan.len());
        for a in 0..g.len() {
            for b in 0..g.len() {
                assert_eq!(g.leq(a, b), g.class(a).cone.is_face_of(&g.class(b).cone));
            }
        }
    }

    #[test]
    fn invalid_system_is_refused() {
        assert!(matches!(
            GluedSystem::new(golden::broken_chain()),
            Err(FanError::InvalidSystem(_))
        ));
    }
}
