use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// `self · other` for single-qubit Paulis: `None` when equal (identity),
    /// otherwise the phase and the third axis, e.g. `Z·X = +iY`.
    pub fn mul(self, other: Axis) -> Option<(Phase, Axis)> {
        use Axis::*;
        Some(match (self, other) {
            (X, X) | (Y, Y) | (Z, Z) => return None,
            (X, Y) => (Phase::I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, X) => (Phase::I, Y),
            (Y, X) => (Phase::MINUS_I, Z),
            (Z, Y) => (Phase::MINUS_I, X),
            (X, Z) => (Phase::MINUS_I, Y),
        })
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Axis> {
        match c {
            'X' => Some(Axis::X),
            'Y' => Some(Axis::Y),
            'Z' => Some(Axis::Z),
            _ => None,
        }
    }
}

/// A power of `i`: `i^k` with `k ∈ 0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+1", "+i", "-1", "-i"][self.0 as usize])
    }
}

/// Sparse tensor product of single-qubit Paulis, identity factors omitted.
/// Factors are kept sorted by qubit index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PauliProduct {
    factors: Vec<(usize, Axis)>,
}

impl PauliProduct {
    pub fn identity() -> Self {
        PauliProduct::default()
    }

    pub fn single(qubit: usize, axis: Axis) -> Self {
        PauliProduct { factors: vec![(qubit, axis)] }
    }

    /// Builds a product from `(qubit, axis)` pairs. Returns `None` if a qubit
    /// appears twice.
    pub fn from_factors(factors: impl IntoIterator<Item = (usize, Axis)>) -> Option<Self> {
        let mut factors: Vec<(usize, Axis)> = factors.into_iter().collect();
        factors.sort_unstable_by_key(|&(q, _)| q);
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        Some(PauliProduct { factors })
    }

    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(usize, Axis)] {
        &self.factors
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    pub fn axis(&self, qubit: usize) -> Option<Axis> {
        self.factors.binary_search_by_key(&qubit, |&(q, _)| q).ok().map(|i| self.factors[i].1)
    }

    /// Largest qubit index plus one, or zero for the identity.
    pub fn span(&self) -> usize {
        self.factors.last().map_or(0, |&(q, _)| q + 1)
    }

    pub fn anticommutes(&self, other: &PauliProduct) -> bool {
        let (mut i, mut j, mut clashes) = (0, 0, 0usize);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i].1 != b[j].1 {
                        clashes += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        clashes % 2 == 1
    }

    pub fn commutes(&self, other: &PauliProduct) -> bool {
        !self.anticommutes(other)
    }

    pub fn overlaps(&self, other: &PauliProduct) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// Group product `a · b` with its global phase.
pub fn pauli_mul(a: &PauliProduct, b: &PauliProduct) -> (Phase, PauliProduct) {
    let (fa, fb) = (&a.factors, &b.factors);
    let mut out = Vec::with_capacity(fa.len() + fb.len());
    let mut phase = Phase::ONE;
    let (mut i, mut j) = (0, 0);
    while i < fa.len() || j < fb.len() {
        let next_a = fa.get(i).map(|f| f.0);
        let next_b = fb.get(j).map(|f| f.0);
        match (next_a, next_b) {
            (Some(qa), Some(qb)) if qa == qb => {
                if let Some((p, axis)) = fa[i].1.mul(fb[j].1) {
                    phase = phase * p;
                    out.push((qa, axis));
                }
                i += 1;
                j += 1;
            }
            (Some(qa), Some(qb)) if qa < qb => {
                out.push(fa[i]);
                i += 1;
            }
            (Some(_), None) => {
                out.push(fa[i]);
                i += 1;
            }
            _ => {
                out.push(fb[j]);
                j += 1;
            }
        }
    }
    (phase, PauliProduct { factors: out })
}

impl fmt::Display for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("I");
        }
        for (k, (q, a)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", a.letter(), q)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Axis::*;

    fn p(f: &[(usize, Axis)]) -> PauliProduct {
        PauliProduct::from_factors(f.iter().copied()).unwrap()
    }

    #[test]
    fn z_times_x_is_i_y() {
        assert_eq!(pauli_mul(&p(&[(0, Z)]), &p(&[(0, X)])), (Phase::I, p(&[(0, Y)])));
        assert_eq!(pauli_mul(&p(&[(0, X)]), &p(&[(0, Z)])), (Phase::MINUS_I, p(&[(0, Y)])));
    }

    #[test]
    fn factorwise_product() {
        let (ph, prod) = pauli_mul(&p(&[(0, X), (1, X)]), &p(&[(0, X), (1, Z)]));
        assert_eq!(ph, Phase::MINUS_I);
        assert_eq!(prod, p(&[(1, Y)]));
    }

    #[test]
    fn disjoint_product_concatenates() {
        let (ph, prod) = pauli_mul(&p(&[(3, Z)]), &p(&[(1, X), (5, Y)]));
        assert_eq!(ph, Phase::ONE);
        assert_eq!(prod, p(&[(1, X), (3, Z), (5, Y)]));
    }

    #[test]
    fn anticommutation_parity() {
        assert!(p(&[(0, Z)]).anticommutes(&p(&[(0, X)])));
        assert!(!p(&[(0, Z), (1, X)]).anticommutes(&p(&[(0, Z), (1, X)])));
        assert!(!p(&[(0, Z), (1, X)]).anticommutes(&p(&[(0, X), (1, Z)])));
        assert!(!p(&[(0, Z)]).anticommutes(&p(&[(1, X)])));
    }

    #[test]
    fn duplicate_qubit_rejected() {
        assert!(PauliProduct::from_factors([(0, X), (0, Z)]).is_none());
    }

    #[test]
    fn phase_fourth_power() {
        for ph in [Phase::ONE, Phase::I, Phase::MINUS_ONE, Phase::MINUS_I] {
            assert_eq!(ph * ph * ph * ph, Phase::ONE);
        }
    }

    #[test]
    fn lookup_and_display() {
        let q = p(&[(4, Y), (0, Z)]);
        assert_eq!(q.axis(4), Some(Y));
        assert_eq!(q.axis(1), None);
        assert_eq!(q.to_string(), "Z0 Y4");
        assert_eq!(q.span(), 5);
    }
}
