use super::{Objective, RngStream, SearchSpace};
use crate::error::{Error, Result};

/// One member of the colony.
#[derive(Debug, Clone, PartialEq)]
pub struct Bacterium {
    pub position: Vec<f64>,
    pub solution: f64,
    pub best_position: Vec<f64>,
    pub best_solution: f64,
    /// Personal best recorded at the last stagnation checkpoint.
    pub previous_best_solution: f64,
}

impl Bacterium {
    /// A fresh bacterium whose personal-best fields start at its own position.
    pub fn new(position: Vec<f64>, solution: f64) -> Self {
        Bacterium {
            best_position: position.clone(),
            best_solution: solution,
            previous_best_solution: solution,
            position,
            solution,
        }
    }
}

impl AsRef<[f64]> for Bacterium {
    fn as_ref(&self) -> &[f64] {
        &self.position
    }
}

/// Scatters `size` bacteria uniformly over `space` and evaluates each one.
///
/// Draw order: bacterium by bacterium, coordinate by coordinate.
pub fn seed_population<O: Objective + ?Sized>(
    space: &SearchSpace,
    size: usize,
    objective: &O,
    rng: &mut RngStream,
) -> Result<Vec<Bacterium>> {
    if size == 0 {
        return Err(Error::config("size", "population size must be at least 1"));
    }
    Ok((0..size)
        .map(|_| {
            let position = space.sample(rng);
            let solution = objective.evaluate(&position);
            Bacterium::new(position, solution)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn seeds_requested_count_in_bounds() {
        let space = SearchSpace::new(2, -5.12, 5.12).unwrap();
        let pop = seed_population(&space, 25, &sphere, &mut RngStream::new(1)).unwrap();
        assert_eq!(pop.len(), 25);
        for b in &pop {
            assert!(space.contains(&b.position));
            assert_eq!(b.solution, sphere(&b.position));
            assert_eq!(b.best_position, b.position);
            assert_eq!(b.best_solution, b.solution);
            assert_eq!(b.previous_best_solution, b.best_solution);
        }
    }

    #[test]
    fn zero_size_is_rejected() {
        let space = SearchSpace::new(2, -1.0, 1.0).unwrap();
        assert!(matches!(seed_population(&space, 0, &sphere, &mut RngStream::new(1)), Err(Error::Config { .. })));
    }

    #[test]
    fn seeding_is_reproducible() {
        let space = SearchSpace::new(3, -100.0, 100.0).unwrap();
        let a = seed_population(&space, 10, &sphere, &mut RngStream::new(77)).unwrap();
        let b = seed_population(&space, 10, &sphere, &mut RngStream::new(77)).unwrap();
        let c = seed_population(&space, 10, &sphere, &mut RngStream::new(78)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().zip(&c).any(|(x, y)| x.position != y.position));
    }
}
