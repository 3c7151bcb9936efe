//! JSON documents read and written by the command-line tool.

use std::fs;
use std::path::Path;

use efpa_core::{Allocation, Instance};
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub utilities: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agents: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resources: Option<Vec<String>>,
}

impl InstanceDocument {
    pub fn from_instance(instance: &Instance) -> Self {
        InstanceDocument {
            utilities: instance.to_rows(),
            agents: instance.agent_labels().map(<[String]>::to_vec),
            resources: instance.resource_labels().map(<[String]>::to_vec),
        }
    }

    pub fn into_instance(self) -> Result<Instance, Failure> {
        let empty = self.utilities.iter().all(Vec::is_empty);
        let mut instance = if empty && !self.utilities.is_empty() {
            Instance::without_resources(self.utilities.len())?
        } else {
            Instance::from_rows(self.utilities)?
        };
        if let Some(labels) = self.agents {
            instance = instance.with_agent_labels(labels)?;
        }
        if let Some(labels) = self.resources {
            instance = instance.with_resource_labels(labels)?;
        }
        Ok(instance)
    }

    /// One matrix row per line; the tool's output format.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"utilities\": [");
        for (i, row) in self.utilities.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&compact(row));
        }
        out.push_str(if self.utilities.is_empty() {
            "]"
        } else {
            "\n  ]"
        });
        if let Some(agents) = &self.agents {
            out.push_str(",\n  \"agents\": ");
            out.push_str(&compact(agents));
        }
        if let Some(resources) = &self.resources {
            out.push_str(",\n  \"resources\": ");
            out.push_str(&compact(resources));
        }
        out.push_str("\n}\n");
        out
    }
}

fn compact<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationDocument {
    pub owner: Vec<Option<usize>>,
}

impl AllocationDocument {
    pub fn from_allocation(allocation: &Allocation) -> Self {
        AllocationDocument {
            owner: allocation.owners().to_vec(),
        }
    }

    pub fn into_allocation(self, instance: &Instance) -> Result<Allocation, Failure> {
        Ok(Allocation::for_instance(instance, self.owner)?)
    }

    pub fn to_json(&self) -> String {
        compact(self) + "\n"
    }
}

fn read(path: &Path, what: &str) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {what} {}: {e}", path.display())))
}

pub fn parse_instance(text: &str) -> Result<Instance, Failure> {
    let doc: InstanceDocument = serde_json::from_str(text)
        .map_err(|e| Failure::Usage(format!("malformed instance: {e}")))?;
    doc.into_instance()
}

pub fn parse_allocation(text: &str, instance: &Instance) -> Result<Allocation, Failure> {
    let doc: AllocationDocument = serde_json::from_str(text)
        .map_err(|e| Failure::Usage(format!("malformed allocation: {e}")))?;
    doc.into_allocation(instance)
}

pub fn read_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path, "instance")?)
}

pub fn read_allocation(path: &Path, instance: &Instance) -> Result<Allocation, Failure> {
    parse_allocation(&read(path, "allocation")?, instance)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}
