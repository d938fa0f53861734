use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A header and rows of cells.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub struct Outcome {
    pub json: Value,
    pub table: Option<Table>,
    pub default: Format,
    /// false when a verification failed
    pub verified: bool,
}

impl Outcome {
    pub fn json(value: impl Serialize) -> Result<Outcome, String> {
        Ok(Outcome { json: serde_json::to_value(value).map_err(|e| e.to_string())?, table: None, default: Format::Json, verified: true })
    }

    pub fn with_table(mut self, table: Table) -> Outcome {
        self.table = Some(table);
        self
    }

    pub fn verified(mut self, ok: bool) -> Outcome {
        self.verified = ok;
        self
    }

    pub fn csv_default(mut self) -> Outcome {
        self.default = Format::Csv;
        self
    }

    /// 0 when verified, 1 on a verification failure.
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.verified)
    }

    pub fn render(&self, format: Option<Format>) -> Result<String, String> {
        match format.unwrap_or(self.default) {
            Format::Json => serde_json::to_string_pretty(&self.json).map(|s| s + "\n").map_err(|e| e.to_string()),
            Format::Csv => {
                let table = self.table.as_ref().ok_or("this command has no CSV form; use --format json")?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header).map_err(|e| e.to_string())?;
                for row in &table.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_verification_exits_one() {
        let o = Outcome::json(1).unwrap();
        assert_eq!(o.exit_code(), 0);
        assert_eq!(o.verified(false).exit_code(), 1);
    }

    #[test]
    fn csv_needs_a_table() {
        let o = Outcome::json(1).unwrap();
        assert!(o.render(Some(Format::Csv)).is_err());
        let o = o.with_table(Table { header: vec!["a".into()], rows: vec![vec!["x,y".into()]] });
        assert_eq!(o.render(Some(Format::Csv)).unwrap(), "a\n\"x,y\"\n");
    }
}
