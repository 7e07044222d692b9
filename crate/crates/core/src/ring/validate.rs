//! Exhaustive check of the commutative-ring-with-identity axioms on a table ring.

use std::fmt;

use serde::Serialize;

use super::table::TableRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    TableRange,
    ZeroNotOne,
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveCommutativity,
    AdditiveAssociativity,
    MultiplicativeCommutativity,
    MultiplicativeIdentity,
    ZeroAbsorbs,
    MultiplicativeAssociativity,
    Distributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::TableRange => "table entries in range",
            Axiom::ZeroNotOne => "zero differs from one",
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::AdditiveInverse => "additive inverses",
            Axiom::AdditiveCommutativity => "commutativity of addition",
            Axiom::AdditiveAssociativity => "associativity of addition",
            Axiom::MultiplicativeCommutativity => "commutativity of multiplication",
            Axiom::MultiplicativeIdentity => "multiplicative identity",
            Axiom::ZeroAbsorbs => "zero times x is zero",
            Axiom::MultiplicativeAssociativity => "associativity of multiplication",
            Axiom::Distributivity => "distributivity",
        };
        f.write_str(s)
    }
}

/// The first violated axiom together with the elements exhibiting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ring: String,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

fn first_failure(axiom: Axiom, ring: &TableRing) -> Option<Violation> {
    let n = ring.order();
    let (z, o) = (ring.zero(), ring.one());
    let hit = |w: Vec<usize>| Some(Violation { axiom, witness: w });
    match axiom {
        Axiom::TableRange => {
            let bad = ring.add_table().iter().chain(ring.mul_table()).position(|&e| e as usize >= n)?;
            let idx = bad % (n * n);
            hit(vec![idx / n, idx % n])
        }
        Axiom::ZeroNotOne => (z == o).then(|| Violation { axiom, witness: vec![z] }),
        Axiom::AdditiveIdentity => {
            let x = ring.elements().find(|&x| ring.add(z, x) != x)?;
            hit(vec![x])
        }
        Axiom::AdditiveInverse => {
            let x = ring.elements().find(|&x| ring.elements().all(|y| ring.add(x, y) != z))?;
            hit(vec![x])
        }
        Axiom::AdditiveCommutativity => {
            for a in 0..n {
                for b in a + 1..n {
                    if ring.add(a, b) != ring.add(b, a) {
                        return hit(vec![a, b]);
                    }
                }
            }
            None
        }
        Axiom::AdditiveAssociativity => {
            triples(n, |a, b, c| ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c)))
                .map(|w| Violation { axiom, witness: w })
        }
        Axiom::MultiplicativeCommutativity => {
            for a in 0..n {
                for b in a + 1..n {
                    if ring.mul(a, b) != ring.mul(b, a) {
                        return hit(vec![a, b]);
                    }
                }
            }
            None
        }
        Axiom::MultiplicativeIdentity => {
            let x = ring.elements().find(|&x| ring.mul(o, x) != x || ring.mul(x, o) != x)?;
            hit(vec![x])
        }
        Axiom::ZeroAbsorbs => {
            let x = ring.elements().find(|&x| ring.mul(z, x) != z || ring.mul(x, z) != z)?;
            hit(vec![x])
        }
        Axiom::MultiplicativeAssociativity => {
            triples(n, |a, b, c| ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c)))
                .map(|w| Violation { axiom, witness: w })
        }
        Axiom::Distributivity => triples(n, |a, b, c| {
            ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
                && ring.mul(ring.add(b, c), a) == ring.add(ring.mul(b, a), ring.mul(c, a))
        })
        .map(|w| Violation { axiom, witness: w }),
    }
}

fn triples(n: usize, ok: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !ok(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Checks every axiom in a fixed order and reports the first violation.
///
/// Range is checked first so the later checks may index freely.
pub fn validate_ring(ring: &TableRing) -> ValidationReport {
    const ORDER: [Axiom; 11] = [
        Axiom::TableRange,
        Axiom::ZeroNotOne,
        Axiom::AdditiveIdentity,
        Axiom::AdditiveInverse,
        Axiom::AdditiveCommutativity,
        Axiom::AdditiveAssociativity,
        Axiom::MultiplicativeCommutativity,
        Axiom::MultiplicativeIdentity,
        Axiom::ZeroAbsorbs,
        Axiom::MultiplicativeAssociativity,
        Axiom::Distributivity,
    ];
    let violation = ORDER.iter().find_map(|&ax| first_failure(ax, ring));
    ValidationReport { ring: ring.label().to_string(), violation }
}
