use serde::Serialize;
use thiserror::Error;

use super::node::Node;
use super::rules::RuleId;

/// One rewrite: the subtree at `path` went from `before` to `after`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: RuleId,
    pub path: Vec<usize>,
    pub before: Node,
    pub after: Node,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step} ({rule}) does not apply at {path:?}")]
pub struct ReplayError {
    pub step: usize,
    pub rule: &'static str,
    pub path: Vec<usize>,
}

/// Ordered trace of rule applications starting from `input`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    input: Node,
    steps: Vec<Step>,
}

impl Derivation {
    pub fn new(input: Node) -> Self {
        Derivation {
            input,
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn input(&self) -> &Node {
        &self.input
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies every step to the input, checking that each `before`
    /// matches the current subtree.
    pub fn replay(&self) -> Result<Node, ReplayError> {
        let mut cur = self.input.clone();
        for (k, step) in self.steps.iter().enumerate() {
            let err = || ReplayError {
                step: k,
                rule: step.rule.id(),
                path: step.path.clone(),
            };
            let slot = cur.at_mut(&step.path).ok_or_else(err)?;
            if *slot != step.before {
                return Err(err());
            }
            *slot = step.after.clone();
        }
        Ok(cur)
    }

    pub fn report(&self) -> Vec<StepReport> {
        self.steps
            .iter()
            .map(|s| StepReport {
                rule: s.rule.id(),
                name: s.rule.name(),
                citation: s.rule.citation(),
                path: s.path.clone(),
                before: s.before.to_string(),
                after: s.after.to_string(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub rule: &'static str,
    pub name: &'static str,
    pub citation: &'static str,
    pub path: Vec<usize>,
    pub before: String,
    pub after: String,
}
