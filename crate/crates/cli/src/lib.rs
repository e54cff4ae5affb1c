//! Batch front end for the multdep kernels: job specs, one runner per
//! subcommand and the acceptance suite. Runners return artifacts as text so
//! that identical jobs give byte-identical files.

pub mod commands;
pub mod job;
pub mod verify;

use std::fs;
use std::path::Path;

use serde::Serialize;

pub use job::{JobSpec, SpecError, Subcommand, Task};

/// One output file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

/// Everything a run produces. `summary` is the main JSON document, printed
/// to stdout and also written as the first artifact.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub summary: String,
    pub artifacts: Vec<Artifact>,
    /// False when a verification ran to completion but found failures.
    pub success: bool,
}

impl RunOutput {
    pub fn write_to(&self, dir: &Path) -> Result<(), Failure> {
        fs::create_dir_all(dir).map_err(Failure::io)?;
        for a in &self.artifacts {
            fs::write(dir.join(&a.name), &a.contents).map_err(Failure::io)?;
        }
        Ok(())
    }
}

/// Structured error printed as JSON on a failed run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub error: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub message: String,
}

impl Failure {
    pub fn io(e: std::io::Error) -> Self {
        Failure {
            error: "io",
            field: None,
            message: e.to_string(),
        }
    }

    /// 2 for rejected jobs, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        if self.error == "invalid_job" {
            2
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("failure serializes")
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure {
            error: "invalid_job",
            field: Some(e.field),
            message: e.message,
        }
    }
}

impl From<multdep_core::Error> for Failure {
    fn from(e: multdep_core::Error) -> Self {
        Failure {
            error: "computation",
            field: None,
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    job: &'a JobSpec,
    result: T,
}

/// Pretty JSON {"job": ..., "result": ...} with a trailing newline.
pub fn json_document<T: Serialize>(job: &JobSpec, result: T) -> String {
    let mut s = serde_json::to_string_pretty(&Document { job, result }).expect("result serializes");
    s.push('\n');
    s
}

/// Text artifact with the job echoed on a leading comment line.
pub fn text_document(job: &JobSpec, body: &str) -> String {
    format!("# job: {}\n{body}", job.echo())
}

/// Validates and runs a job.
pub fn run(job: &JobSpec) -> Result<RunOutput, Failure> {
    let task = job.validate()?;
    commands::execute(job, task)
}
