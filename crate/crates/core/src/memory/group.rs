use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MemoryError;

/// Monomial `x^i y^j`, i.e. an element of `ℤ_ℓ × ℤ_m` written additively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialLabel {
    pub i: usize,
    pub j: usize,
}

impl MonomialLabel {
    pub const IDENTITY: MonomialLabel = MonomialLabel { i: 0, j: 0 };

    pub fn new(i: usize, j: usize) -> Self {
        MonomialLabel { i, j }
    }
}

impl fmt::Display for MonomialLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => f.write_str("1"),
            (i, 0) => write!(f, "x^{i}"),
            (0, j) => write!(f, "y^{j}"),
            (i, j) => write!(f, "x^{i}y^{j}"),
        }
    }
}

/// The abelian group `ℤ_ℓ × ℤ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelGroup {
    pub l: usize,
    pub m: usize,
}

impl Default for LabelGroup {
    fn default() -> Self {
        LabelGroup { l: 6, m: 2 }
    }
}

impl LabelGroup {
    pub fn order(&self) -> usize {
        self.l * self.m
    }

    pub fn contains(&self, a: MonomialLabel) -> bool {
        a.i < self.l && a.j < self.m
    }

    pub fn mul(&self, a: MonomialLabel, b: MonomialLabel) -> MonomialLabel {
        MonomialLabel::new((a.i + b.i) % self.l, (a.j + b.j) % self.m)
    }

    pub fn inv(&self, a: MonomialLabel) -> MonomialLabel {
        MonomialLabel::new((self.l - a.i) % self.l, (self.m - a.j) % self.m)
    }

    /// `a / b = a · b⁻¹`
    pub fn div(&self, a: MonomialLabel, b: MonomialLabel) -> MonomialLabel {
        self.mul(a, self.inv(b))
    }

    pub fn index(&self, a: MonomialLabel) -> usize {
        a.i * self.m + a.j
    }

    pub fn element(&self, index: usize) -> MonomialLabel {
        MonomialLabel::new(index / self.m, index % self.m)
    }

    pub fn elements(&self) -> impl Iterator<Item = MonomialLabel> + '_ {
        (0..self.order()).map(|k| self.element(k))
    }
}

/// Which half of the move protocol a generator may be used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    X,
    Z,
    #[default]
    Both,
}

impl Route {
    fn serves(self, wanted: Route) -> bool {
        self == Route::Both || self == wanted
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub label: MonomialLabel,
    #[serde(default)]
    pub route: Route,
}

/// The automorphisms available in one clock cycle, as group elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorSet {
    generators: Vec<Generator>,
}

impl GeneratorSet {
    /// Checks that no generator is the identity or outside `group`, and that
    /// the X-route and Z-route subsets each generate the whole group.
    pub fn new(generators: Vec<Generator>, group: LabelGroup) -> Result<Self, MemoryError> {
        let set = GeneratorSet { generators };
        set.validate(group)?;
        Ok(set)
    }

    pub fn validate(&self, group: LabelGroup) -> Result<(), MemoryError> {
        if group.l == 0 || group.m == 0 {
            return Err(MemoryError::InvalidGroup(group));
        }
        for g in &self.generators {
            if !group.contains(g.label) {
                return Err(MemoryError::LabelOutOfRange { label: g.label, group });
            }
            if g.label == MonomialLabel::IDENTITY {
                return Err(MemoryError::IdentityGenerator);
            }
        }
        for route in [Route::X, Route::Z] {
            let reached = distances(group, self, MonomialLabel::IDENTITY, route);
            if reached.iter().any(Option::is_none) {
                return Err(MemoryError::DoesNotGenerate(route));
            }
        }
        Ok(())
    }

    /// `{x, x⁵, xy}` on the default `ℤ_6 × ℤ_2`, usable on both routes.
    pub fn default_omega() -> Self {
        let labels = [(1, 0), (5, 0), (1, 1)];
        GeneratorSet {
            generators: labels
                .iter()
                .map(|&(i, j)| Generator { label: MonomialLabel::new(i, j), route: Route::Both })
                .collect(),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    fn for_route(&self, route: Route) -> impl Iterator<Item = MonomialLabel> + '_ {
        self.generators.iter().filter(move |g| g.route.serves(route)).map(|g| g.label)
    }
}

impl Default for GeneratorSet {
    fn default() -> Self {
        GeneratorSet::default_omega()
    }
}

/// BFS over the Cayley graph: `(distance, parent, generator)` per element.
fn bfs(
    group: LabelGroup,
    omega: &GeneratorSet,
    from: MonomialLabel,
    route: Route,
) -> Vec<Option<(usize, usize, MonomialLabel)>> {
    let mut seen = vec![None; group.order()];
    let start = group.index(from);
    seen[start] = Some((0, start, MonomialLabel::IDENTITY));
    let mut queue = VecDeque::from([from]);
    while let Some(a) = queue.pop_front() {
        let ia = group.index(a);
        let da = seen[ia].expect("queued elements are seen").0;
        for g in omega.for_route(route) {
            let b = group.mul(a, g);
            let ib = group.index(b);
            if seen[ib].is_none() {
                seen[ib] = Some((da + 1, ia, g));
                queue.push_back(b);
            }
        }
    }
    seen
}

fn distances(group: LabelGroup, omega: &GeneratorSet, from: MonomialLabel, route: Route) -> Vec<Option<usize>> {
    bfs(group, omega, from, route).into_iter().map(|e| e.map(|(d, _, _)| d)).collect()
}

/// Minimum-length word `w₁…w_k` with `from · w₁ ⋯ w_k = to`. Ties are broken
/// by generator order.
pub fn shortest_automorphism_sequence(
    group: LabelGroup,
    omega: &GeneratorSet,
    from: MonomialLabel,
    to: MonomialLabel,
    route: Route,
) -> Result<Vec<MonomialLabel>, MemoryError> {
    for label in [from, to] {
        if !group.contains(label) {
            return Err(MemoryError::LabelOutOfRange { label, group });
        }
    }
    let tree = bfs(group, omega, from, route);
    let mut word = Vec::new();
    let mut at = group.index(to);
    let start = group.index(from);
    while at != start {
        let (_, parent, g) = tree[at].ok_or(MemoryError::Unreachable { from, to })?;
        word.push(g);
        at = parent;
    }
    word.reverse();
    Ok(word)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccessStats {
    pub mean: f64,
    pub max: usize,
    /// `histogram[k]` = number of ordered (probe, target) pairs at distance `k`.
    pub histogram: Vec<usize>,
}

/// Word-length statistics over every ordered (probe, target) pair.
pub fn access_cost_stats(group: LabelGroup, omega: &GeneratorSet, route: Route) -> Result<AccessStats, MemoryError> {
    omega.validate(group)?;
    let mut histogram = Vec::new();
    let mut total = 0usize;
    for from in group.elements() {
        for d in distances(group, omega, from, route) {
            let d = d.expect("validated generator set reaches every element");
            if histogram.len() <= d {
                histogram.resize(d + 1, 0);
            }
            histogram[d] += 1;
            total += d;
        }
    }
    let pairs = group.order() * group.order();
    Ok(AccessStats { mean: total as f64 / pairs as f64, max: histogram.len() - 1, histogram })
}

/// Labels ordered by distance from `from` (ties by index).
pub fn labels_by_distance(group: LabelGroup, omega: &GeneratorSet, from: MonomialLabel) -> Vec<MonomialLabel> {
    let dist = distances(group, omega, from, Route::X);
    let mut labels: Vec<MonomialLabel> = group.elements().collect();
    labels.sort_by_key(|&a| (dist[group.index(a)].unwrap_or(usize::MAX), group.index(a)));
    labels
}
