//! placeholder
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("todo")]
    Todo,
}

#[derive(Debug, Clone, Default)]
pub struct PipelineReport;

pub fn compile_diagram() {}
