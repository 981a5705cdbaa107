use crate::word::{Word, MAX_LETTERS};
use crate::LieError;

/// Ordered generator names with their degrees. The order fixes the Lyndon order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
    degrees: Vec<i64>,
    gen_degree: i64,
}

impl GeneratorSet {
    /// All generators in degree `gen_degree`.
    pub fn new<S: AsRef<str>>(names: &[S], gen_degree: i64) -> Result<Self, LieError> {
        if gen_degree < 1 {
            return Err(LieError::BadDegree(gen_degree));
        }
        Self::build(names, vec![gen_degree; names.len()], gen_degree)
    }

    /// Generators `x1, …, xn` in degree `gen_degree`.
    pub fn numbered(prefix: &str, n: usize, gen_degree: i64) -> Result<Self, LieError> {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(&names, gen_degree)
    }

    /// Generators of individually chosen degrees. Only the perturbation instances need this.
    pub fn mixed<S: AsRef<str>>(names: &[S], degrees: &[i64]) -> Result<Self, LieError> {
        if names.len() != degrees.len() {
            return Err(LieError::Syntax("names and degrees differ in length".into()));
        }
        let first = degrees.first().copied().unwrap_or(1);
        Self::build(names, degrees.to_vec(), first)
    }

    fn build<S: AsRef<str>>(names: &[S], degrees: Vec<i64>, gen_degree: i64) -> Result<Self, LieError> {
        if names.len() > MAX_LETTERS {
            return Err(LieError::TooManyGenerators(names.len()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !a.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                return Err(LieError::Syntax(format!("bad generator name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(LieError::DuplicateName(a.clone()));
            }
        }
        Ok(GeneratorSet { names, degrees, gen_degree })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The common generator degree (`d − 1` in the manifold setting).
    pub fn gen_degree(&self) -> i64 {
        self.gen_degree
    }

    pub fn is_uniform(&self) -> bool {
        self.degrees.iter().all(|&d| d == self.gen_degree)
    }

    pub fn degree(&self, letter: usize) -> i64 {
        self.degrees[letter]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn word_degree(&self, w: Word) -> i64 {
        if self.is_uniform() {
            return w.len() as i64 * self.gen_degree;
        }
        w.letters().iter().map(|&l| self.degrees[l as usize]).sum()
    }

    /// Parities of the generators; the tensor expansions depend only on these.
    pub fn parity_key(&self) -> Vec<bool> {
        self.degrees.iter().map(|d| d.rem_euclid(2) == 1).collect()
    }
}
