//! Task execution and report records.
//!
//! Each task produces one [`TaskRecord`], serialized as a single JSON line.
//! Output is deterministic byte for byte for a fixed manifest: object maps
//! are ordered, monomial rendering is ordered, and parallel runs still emit
//! records in task order.

use serde::Serialize;

use bcblow_core::nilbc::{self, BcExactness};
use bcblow_core::presets;
use bcblow_core::rat::{self, BigInt};
use bcblow_core::report::CheckReport;
use bcblow_core::rrwd;

use crate::manifest::{build_form, BuiltManifest, TaskSpec};

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub key: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct ValueRecord {
    pub name: String,
    pub value: String,
}

/// The report of one executed task.
#[derive(Debug, Serialize)]
pub struct TaskRecord {
    pub task: String,
    pub kind: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    pub values: Vec<ValueRecord>,
}

impl TaskRecord {
    fn from_reports(task: String, kind: &str, reports: Vec<CheckReport>) -> Self {
        let passed = reports.iter().all(|r| r.passed);
        TaskRecord {
            task,
            kind: kind.to_string(),
            passed,
            checks: reports
                .into_iter()
                .map(|r| CheckRecord {
                    key: r.key,
                    status: if r.passed { "pass" } else { "fail" }.to_string(),
                    detail: r.detail,
                })
                .collect(),
            values: Vec::new(),
        }
    }

    fn error(task: String, kind: &str, message: String) -> Self {
        TaskRecord {
            task,
            kind: kind.to_string(),
            passed: false,
            checks: vec![CheckRecord {
                key: "execution".to_string(),
                status: "fail".to_string(),
                detail: message,
            }],
            values: Vec::new(),
        }
    }
}

fn run_one(built: &BuiltManifest, index: usize, task: &TaskSpec) -> TaskRecord {
    let label = task.label(index);
    let kind = task.kind();
    match execute(built, task, &label) {
        Ok(record) => record,
        Err(message) => TaskRecord::error(label, kind, message),
    }
}

fn execute(built: &BuiltManifest, task: &TaskSpec, label: &str) -> Result<TaskRecord, String> {
    match task {
        TaskSpec::VerifyBlowup { embedding, .. } => {
            let br = &built.embeddings[embedding];
            let reports = br.verify_identities().map_err(|e| e.to_string())?;
            let mut record =
                TaskRecord::from_reports(label.to_string(), task.kind(), reports);
            if br.embedding().tangent_y().is_some() && br.embedding().tangent_x().is_some() {
                let total = br.total_chern().map_err(|e| e.to_string())?;
                record.values.push(ValueRecord {
                    name: "total-chern".to_string(),
                    value: br.render(&total),
                });
            }
            Ok(record)
        }
        TaskSpec::BlowupChern { embedding, .. } => {
            let br = &built.embeddings[embedding];
            let total = br.total_chern().map_err(|e| e.to_string())?;
            let mut values = vec![ValueRecord {
                name: "total-chern".to_string(),
                value: br.render(&total),
            }];
            for k in 0..=br.embedding().ring_y().dim() {
                values.push(ValueRecord {
                    name: format!("component-{k}"),
                    value: br.render(&br.component(&total, k)),
                });
            }
            Ok(TaskRecord {
                task: label.to_string(),
                kind: task.kind().to_string(),
                passed: true,
                checks: vec![CheckRecord {
                    key: "assembled".to_string(),
                    status: "pass".to_string(),
                    detail: "correction class forms agree and the constant term vanished before division"
                        .to_string(),
                }],
                values,
            })
        }
        TaskSpec::RrSeries { u, v, degree, .. } => {
            let f = rrwd::compute_f(*u, *v, *degree).map_err(|e| e.to_string())?;
            let names = f.variable_names();
            let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let mut values = Vec::new();
            for (m, c) in f.entries() {
                let mono = bcblow_core::poly::Poly::from_monomial(m.clone(), rat::rat_int(1));
                values.push(ValueRecord {
                    name: mono.render(&name_refs),
                    value: c.to_string(),
                });
            }
            let expected = rat::alt_big(u - 1, rat::factorial(u - 1) * BigInt::from(*v));
            let constant_ok = f.constant_term() == expected;
            Ok(TaskRecord {
                task: label.to_string(),
                kind: task.kind().to_string(),
                passed: constant_ok,
                checks: vec![CheckRecord {
                    key: "lowest-term".to_string(),
                    status: if constant_ok { "pass" } else { "fail" }.to_string(),
                    detail: format!(
                        "constant term {} (expected (-1)^(u-1)(u-1)! v = {})",
                        f.constant_term(),
                        expected
                    ),
                }],
                values,
            })
        }
        TaskSpec::RrPushforward {
            embedding, bundle, ..
        } => {
            let br = &built.embeddings[embedding];
            let twist = &built.bundles[bundle];
            let total = rrwd::rr_without_denominators(br.embedding(), twist)
                .map_err(|e| e.to_string())?;
            let r = br.embedding().codim();
            let mut checks = Vec::new();
            for q in 1..r {
                let component = total.component(q);
                checks.push(CheckRecord {
                    key: format!("vanishing-degree-{q}"),
                    status: if component.is_zero() { "pass" } else { "fail" }.to_string(),
                    detail: component.render(),
                });
            }
            let mut values = Vec::new();
            for k in 0..=br.embedding().ring_y().dim() {
                let component = total.component(k);
                if !component.is_zero() || k == 0 {
                    values.push(ValueRecord {
                        name: format!("component-{k}"),
                        value: component.render(),
                    });
                }
            }
            let passed = checks.iter().all(|c| c.status == "pass");
            Ok(TaskRecord {
                task: label.to_string(),
                kind: task.kind().to_string(),
                passed,
                checks,
                values,
            })
        }
        TaskSpec::NilbcDims { nilmanifold, .. } => {
            let se = &built.nilmanifolds[nilmanifold];
            nilbc::build_bicomplex(se).map_err(|e| e.to_string())?;
            let n = se.dim();
            let table = nilbc::bc_dimension_table(se);
            let symmetric = table.iter().all(|(&(p, q), &d)| table[&(q, p)] == d);
            let top = table[&(n, n)];
            let mut values = Vec::new();
            for (&(p, q), &d) in &table {
                values.push(ValueRecord {
                    name: format!("h^({p},{q})"),
                    value: d.to_string(),
                });
            }
            values.push(ValueRecord {
                name: "table".to_string(),
                value: nilbc::render_table(&table, n),
            });
            let checks = vec![
                CheckRecord {
                    key: "bicomplex-identities".to_string(),
                    status: "pass".to_string(),
                    detail: "del^2 = delbar^2 = del delbar + delbar del = 0".to_string(),
                },
                CheckRecord {
                    key: "conjugation-symmetry".to_string(),
                    status: if symmetric { "pass" } else { "fail" }.to_string(),
                    detail: "h^(p,q) = h^(q,p)".to_string(),
                },
                CheckRecord {
                    key: "top-class".to_string(),
                    status: if top >= 1 { "pass" } else { "fail" }.to_string(),
                    detail: format!("h^({n},{n}) = {top}"),
                },
            ];
            let passed = checks.iter().all(|c| c.status == "pass");
            Ok(TaskRecord {
                task: label.to_string(),
                kind: task.kind().to_string(),
                passed,
                checks,
                values,
            })
        }
        TaskSpec::BcExact {
            nilmanifold, form, ..
        } => {
            let se = &built.nilmanifolds[nilmanifold];
            let form = build_form(label, se.dim(), form).map_err(|e| e.to_string())?;
            let outcome = nilbc::is_bc_exact(se, &form).map_err(|e| e.to_string())?;
            let (checks, values) = match outcome {
                BcExactness::Exact { primitive } => (
                    vec![CheckRecord {
                        key: "exactness".to_string(),
                        status: "pass".to_string(),
                        detail: "an explicit primitive exists".to_string(),
                    }],
                    vec![
                        ValueRecord {
                            name: "form".to_string(),
                            value: form.render(),
                        },
                        ValueRecord {
                            name: "primitive".to_string(),
                            value: primitive.render(),
                        },
                    ],
                ),
                BcExactness::NotExact {
                    image_rank,
                    augmented_rank,
                } => (
                    vec![CheckRecord {
                        key: "exactness".to_string(),
                        status: "pass".to_string(),
                        detail: format!(
                            "not exact: image rank {image_rank}, augmented rank {augmented_rank}"
                        ),
                    }],
                    vec![ValueRecord {
                        name: "form".to_string(),
                        value: form.render(),
                    }],
                ),
            };
            Ok(TaskRecord {
                task: label.to_string(),
                kind: task.kind().to_string(),
                passed: true,
                checks,
                values,
            })
        }
        TaskSpec::VerifyPreset { preset, .. } => {
            let reports = presets::verify_preset(preset).map_err(|e| e.to_string())?;
            let mut record = TaskRecord::from_reports(label.to_string(), task.kind(), reports);
            if let Ok(br) = presets::blowup_preset(preset) {
                if let Ok(total) = br.total_chern() {
                    record.values.push(ValueRecord {
                        name: "total-chern".to_string(),
                        value: br.render(&total),
                    });
                }
            }
            Ok(record)
        }
    }
}

/// Runs the selected tasks in order; with `parallel`, independent tasks run
/// on threads but records are still emitted in task order.
pub fn run_tasks(
    built: &BuiltManifest,
    filter: Option<&str>,
    parallel: bool,
) -> Vec<TaskRecord> {
    let selected: Vec<(usize, &TaskSpec)> = built
        .tasks
        .iter()
        .enumerate()
        .filter(|(i, t)| filter.is_none_or(|f| t.label(*i) == f))
        .collect();
    if parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = selected
                .iter()
                .map(|(i, t)| scope.spawn(move || run_one(built, *i, t)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    } else {
        selected
            .into_iter()
            .map(|(i, t)| run_one(built, i, t))
            .collect()
    }
}

