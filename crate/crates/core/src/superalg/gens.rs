use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::scalar::Field;
use crate::error::{Error, Result};

/// Grassmann parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(odd_factors: usize) -> Parity {
        if odd_factors.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> usize {
        self as usize
    }

    pub fn plus(self, other: Parity) -> Parity {
        Parity::from_count(self.bit() + other.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    /// Name of the declared inverse; only even generators may carry one.
    pub inverse: Option<String>,
}

impl Generator {
    pub fn even(name: &str) -> Generator {
        Generator { name: name.into(), parity: Parity::Even, inverse: None }
    }

    pub fn odd(name: &str) -> Generator {
        Generator { name: name.into(), parity: Parity::Odd, inverse: None }
    }

    pub fn invertible(name: &str, inverse: &str) -> Generator {
        Generator { name: name.into(), parity: Parity::Even, inverse: Some(inverse.into()) }
    }
}

/// Position of a generator inside a monomial: its even slot or odd slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Even(usize),
    Odd(usize),
}

/// A symbol that can carry a homomorphism image: a generator, or the declared
/// inverse of an invertible generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Gen(usize),
    Inverse(usize),
}

/// Ordered generators of a free supercommutative (optionally Laurent) algebra
/// over a field. The order fixes the canonical monomial form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    field: Field,
    gens: Vec<Generator>,
    slots: Vec<Slot>,
    even_gens: Vec<usize>,
    odd_gens: Vec<usize>,
    invertible: Vec<usize>,
}

impl GeneratorSet {
    pub fn new(field: Field, gens: Vec<Generator>) -> Result<GeneratorSet> {
        let mut seen = HashSet::new();
        for g in &gens {
            if !seen.insert(g.name.clone()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
            if let Some(inv) = &g.inverse {
                if g.parity.is_odd() {
                    return Err(Error::OddInvertible(g.name.clone()));
                }
                if !seen.insert(inv.clone()) {
                    return Err(Error::DuplicateGenerator(inv.clone()));
                }
            }
        }
        let mut slots = Vec::with_capacity(gens.len());
        let (mut even_gens, mut odd_gens, mut invertible) = (vec![], vec![], vec![]);
        for (i, g) in gens.iter().enumerate() {
            match g.parity {
                Parity::Even => {
                    slots.push(Slot::Even(even_gens.len()));
                    even_gens.push(i);
                }
                Parity::Odd => {
                    slots.push(Slot::Odd(odd_gens.len()));
                    odd_gens.push(i);
                }
            }
            if g.inverse.is_some() {
                invertible.push(i);
            }
        }
        Ok(GeneratorSet { field, gens, slots, even_gens, odd_gens, invertible })
    }

    /// The empty presentation: the base field itself.
    pub fn empty(field: Field) -> GeneratorSet {
        GeneratorSet::new(field, vec![]).expect("empty set is valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_field(&self, field: Field) -> GeneratorSet {
        GeneratorSet { field, ..self.clone() }
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn slot(&self, gen: usize) -> Slot {
        self.slots[gen]
    }

    pub fn even_count(&self) -> usize {
        self.even_gens.len()
    }

    pub fn odd_count(&self) -> usize {
        self.odd_gens.len()
    }

    /// Generator index of the `k`-th even slot.
    pub fn even_gen(&self, k: usize) -> usize {
        self.even_gens[k]
    }

    pub fn odd_gen(&self, k: usize) -> usize {
        self.odd_gens[k]
    }

    pub fn is_invertible(&self, gen: usize) -> bool {
        self.gens[gen].inverse.is_some()
    }

    /// Generators first, then one inverse symbol per invertible generator.
    pub fn symbol_count(&self) -> usize {
        self.gens.len() + self.invertible.len()
    }

    pub fn symbol(&self, index: usize) -> Symbol {
        if index < self.gens.len() {
            Symbol::Gen(index)
        } else {
            Symbol::Inverse(self.invertible[index - self.gens.len()])
        }
    }

    pub fn symbol_index(&self, symbol: Symbol) -> usize {
        match symbol {
            Symbol::Gen(i) => i,
            Symbol::Inverse(i) => {
                self.gens.len()
                    + self
                        .invertible
                        .iter()
                        .position(|&g| g == i)
                        .expect("inverse symbol of a non-invertible generator")
            }
        }
    }

    /// Index of the inverse symbol of `gen`, if it is invertible.
    pub fn inverse_symbol(&self, gen: usize) -> Option<usize> {
        self.is_invertible(gen).then(|| self.symbol_index(Symbol::Inverse(gen)))
    }

    pub fn symbol_name(&self, index: usize) -> &str {
        match self.symbol(index) {
            Symbol::Gen(i) => &self.gens[i].name,
            Symbol::Inverse(i) => self.gens[i].inverse.as_deref().expect("invertible"),
        }
    }

    pub fn symbol_parity(&self, index: usize) -> Parity {
        match self.symbol(index) {
            Symbol::Gen(i) => self.gens[i].parity,
            Symbol::Inverse(_) => Parity::Even,
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        for (i, g) in self.gens.iter().enumerate() {
            if g.name == name {
                return Some(Symbol::Gen(i));
            }
            if g.inverse.as_deref() == Some(name) {
                return Some(Symbol::Inverse(i));
            }
        }
        None
    }

    /// Drops the odd generators, keeping order and inverses.
    pub fn even_part(&self) -> GeneratorSet {
        let gens = self.gens.iter().filter(|g| !g.parity.is_odd()).cloned().collect();
        GeneratorSet::new(self.field, gens).expect("subset of a valid set")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_invertible_and_duplicates() {
        let bad = Generator { name: "theta".into(), parity: Parity::Odd, inverse: Some("ti".into()) };
        assert_eq!(GeneratorSet::new(Field::Rational, vec![bad]), Err(Error::OddInvertible("theta".into())));
        assert_eq!(
            GeneratorSet::new(Field::Rational, vec![Generator::even("x"), Generator::odd("x")]),
            Err(Error::DuplicateGenerator("x".into()))
        );
        assert!(
            GeneratorSet::new(Field::Rational, vec![Generator::invertible("x", "y"), Generator::even("y")]).is_err()
        );
    }

    #[test]
    fn symbols_list_inverses_after_generators() {
        let g = GeneratorSet::new(Field::Rational, vec![Generator::invertible("x", "xinv"), Generator::odd("theta")])
            .unwrap();
        assert_eq!(g.symbol_count(), 3);
        assert_eq!(g.symbol_name(2), "xinv");
        assert_eq!(g.lookup("xinv"), Some(Symbol::Inverse(0)));
        assert_eq!(g.inverse_symbol(0), Some(2));
        assert_eq!(g.slot(1), Slot::Odd(0));
    }
}
