//! Shared CSV plumbing: comment-aware readers, header lookup with row
//! numbers for error messages, and the fixed float format of all outputs.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

/// Decimal places of every float written to an output file.
pub const FLOAT_DECIMALS: usize = 6;

/// Fixed six-decimal formatting; negative zero is printed as zero.
pub fn fmt_f64(value: f64) -> String {
    let s = format!("{:.*}", FLOAT_DECIMALS, value);
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input)
}

pub fn open(path: &Path) -> io::Result<csv::Reader<File>> {
    Ok(reader(File::open(path)?))
}

/// Resolved column positions for a header row.
#[derive(Debug, Clone)]
pub struct Columns {
    names: Vec<String>,
}

impl Columns {
    pub fn new(headers: &csv::StringRecord) -> Self {
        Columns {
            names: headers.iter().map(|h| h.to_ascii_lowercase()).collect(),
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Column indices for `required`, or the first missing name.
    pub fn require(&self, required: &[&str]) -> Result<Vec<usize>, String> {
        required
            .iter()
            .map(|name| self.index(name).ok_or_else(|| name.to_string()))
            .collect()
    }
}

/// 1-based line number of a record in its source file.
pub fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

/// A CSV file whose first line is a provenance comment.
pub struct CsvOutput {
    buf: Vec<u8>,
}

impl CsvOutput {
    pub fn new(config_hash: &str, header: &[&str]) -> Self {
        let mut buf = Vec::new();
        writeln!(buf, "# hazardrate config_sha256={config_hash}").expect("vec write");
        writeln!(buf, "{}", header.join(",")).expect("vec write");
        CsvOutput { buf }
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut writer = csv::WriterBuilder::new()
            .has_headers(false)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let fields: Vec<String> = fields.into_iter().map(|f| f.as_ref().to_string()).collect();
        writer.write_record(&fields).expect("vec write");
        self.buf.extend(writer.into_inner().expect("vec flush"));
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.buf
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        std::fs::write(path, &self.buf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_decimals_and_no_negative_zero() {
        assert_eq!(fmt_f64(0.1018522), "0.101852");
        assert_eq!(fmt_f64(-0.0000001), "0.000000");
        assert_eq!(fmt_f64(-1.5), "-1.500000");
        assert_eq!(fmt_f64(2.0), "2.000000");
    }

    #[test]
    fn output_starts_with_provenance_comment_and_quotes_commas() {
        let mut out = CsvOutput::new("abc", &["iso3", "name"]);
        out.row(["BOL", "Bolivia, Plurinational State of"]);
        let text = String::from_utf8(out.as_bytes().to_vec()).unwrap();
        assert_eq!(
            text,
            "# hazardrate config_sha256=abc\niso3,name\nBOL,\"Bolivia, Plurinational State of\"\n"
        );
        let mut rdr = reader(text.as_bytes());
        let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 1);
        assert_eq!(&rows[0][1], "Bolivia, Plurinational State of");
    }
}
