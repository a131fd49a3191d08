//! Output writing: CSV or JSON with a reproducibility header (version,
//! manifest echo, seed, wall clock). Numeric formatting uses Rust's shortest
//! round-trip representation, so reloading a file reproduces the bits.

use super::manifest::{OutputFormat, RunManifest};
use super::CliError;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

pub struct Row {
    pub tag: Option<&'static str>,
    pub inputs: Vec<(&'static str, f64)>,
    pub value: f64,
    pub err_est: f64,
}

impl Row {
    pub fn new(inputs: Vec<(&'static str, f64)>, value: f64, err_est: f64) -> Self {
        Row {
            tag: None,
            inputs,
            value,
            err_est,
        }
    }

    pub fn with_tag(
        tag: &'static str,
        inputs: Vec<(&'static str, f64)>,
        value: f64,
        err_est: f64,
    ) -> Self {
        Row {
            tag: Some(tag),
            inputs,
            value,
            err_est,
        }
    }
}

pub struct OutputSink {
    writer: Box<dyn Write>,
    format: OutputFormat,
    manifest: RunManifest,
}

impl OutputSink {
    pub fn create(m: &RunManifest) -> Result<Self, CliError> {
        let writer: Box<dyn Write> = match &m.out {
            Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
            None => Box::new(std::io::BufWriter::new(std::io::stdout())),
        };
        Ok(OutputSink {
            writer,
            format: m.format,
            manifest: m.clone(),
        })
    }

    fn header_value(&self) -> serde_json::Value {
        serde_json::json!({
            "version": env!("CARGO_PKG_VERSION"),
            "seed": self.manifest.seed,
            "unix_time": SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            "manifest": serde_json::to_value(&self.manifest).unwrap_or_default(),
        })
    }

    pub fn write_rows(&mut self, rows: &[Row]) -> Result<(), CliError> {
        match self.format {
            OutputFormat::Csv => {
                writeln!(self.writer, "# {}", self.header_value())?;
                let mut header: Vec<String> = Vec::new();
                if rows.iter().any(|r| r.tag.is_some()) {
                    header.push("side".into());
                }
                if let Some(first) = rows.first() {
                    for (name, _) in &first.inputs {
                        header.push((*name).into());
                    }
                }
                header.push("value".into());
                header.push("err_est".into());
                writeln!(self.writer, "{}", header.join(","))?;
                for r in rows {
                    let mut fields: Vec<String> = Vec::new();
                    if let Some(t) = r.tag {
                        fields.push(t.into());
                    } else if rows.iter().any(|q| q.tag.is_some()) {
                        fields.push(String::new());
                    }
                    for (_, v) in &r.inputs {
                        fields.push(format!("{v}"));
                    }
                    fields.push(format!("{}", r.value));
                    fields.push(format!("{}", r.err_est));
                    writeln!(self.writer, "{}", fields.join(","))?;
                }
            }
            OutputFormat::Json => {
                let rows_json: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|r| {
                        let mut obj = serde_json::Map::new();
                        if let Some(t) = r.tag {
                            obj.insert("side".into(), t.into());
                        }
                        for (name, v) in &r.inputs {
                            obj.insert((*name).into(), (*v).into());
                        }
                        obj.insert("value".into(), r.value.into());
                        obj.insert("err_est".into(), r.err_est.into());
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                let doc = serde_json::json!({
                    "header": self.header_value(),
                    "rows": rows_json,
                });
                writeln!(self.writer, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
            }
        }
        self.writer.flush()?;
        Ok(())
    }

    pub fn write_samples(
        &mut self,
        samples: &[(usize, Result<super::Rec, String>)],
    ) -> Result<(), CliError> {
        let width = samples
            .iter()
            .filter_map(|(_, r)| r.as_ref().ok().map(|s| s.place.len()))
            .max()
            .unwrap_or(1);
        match self.format {
            OutputFormat::Csv => {
                writeln!(self.writer, "# {}", self.header_value())?;
                let mut header = vec!["path".to_string()];
                for i in 0..width {
                    header.push(format!("place{}", i + 1));
                }
                header.push("time_functional".into());
                header.push("exact_place".into());
                header.push("exact_time".into());
                writeln!(self.writer, "{}", header.join(","))?;
                for (i, r) in samples {
                    match r {
                        Ok(s) => {
                            let mut fields = vec![format!("{i}")];
                            for j in 0..width {
                                fields.push(
                                    s.place.get(j).map(|v| format!("{v}")).unwrap_or_default(),
                                );
                            }
                            fields.push(
                                s.time
                                    .map(|t| format!("{t}"))
                                    .unwrap_or_else(|| "".into()),
                            );
                            fields.push(format!("{}", s.exact_place));
                            fields.push(format!("{}", s.exact_time));
                            writeln!(self.writer, "{}", fields.join(","))?;
                        }
                        Err(e) => {
                            writeln!(self.writer, "{i},error:{e}")?;
                        }
                    }
                }
            }
            OutputFormat::Json => {
                let rows: Vec<serde_json::Value> = samples
                    .iter()
                    .map(|(i, r)| match r {
                        Ok(s) => serde_json::json!({
                            "path": i,
                            "place": s.place,
                            "time_functional": s.time,
                            "exact_place": s.exact_place,
                            "exact_time": s.exact_time,
                        }),
                        Err(e) => serde_json::json!({"path": i, "error": e}),
                    })
                    .collect();
                let doc = serde_json::json!({
                    "header": self.header_value(),
                    "samples": rows,
                });
                writeln!(self.writer, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
            }
        }
        self.writer.flush()?;
        Ok(())
    }

    pub fn write_report(&mut self, report: &crate::verify::SuiteReport) -> Result<(), CliError> {
        let doc = serde_json::json!({
            "header": self.header_value(),
            "report": report,
        });
        writeln!(self.writer, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        self.writer.flush()?;
        Ok(())
    }
}
