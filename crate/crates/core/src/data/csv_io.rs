use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Loads a headerless `label,f1,...,fq` CSV file.
pub fn load_csv_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv_dataset(file)
}

pub fn parse_csv_dataset<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut expected = None;
    let mut samples: Vec<(String, Vector)> = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let row = r + 1;
        let record = record.map_err(|e| Error::Parse {
            row,
            column: 0,
            message: e.to_string(),
        })?;
        let width = *expected.get_or_insert(record.len());
        if record.len() != width {
            return Err(Error::RaggedRows {
                row,
                expected: width,
                found: record.len(),
            });
        }
        if width < 2 {
            return Err(Error::Parse {
                row,
                column: 1,
                message: "a row needs a label and at least one feature".into(),
            });
        }
        let label = record[0].to_string();
        let mut features = Vec::with_capacity(width - 1);
        for (c, field) in record.iter().enumerate().skip(1) {
            let column = c + 1;
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                row,
                column,
                message: format!("`{field}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { row, column });
            }
            features.push(v);
        }
        samples.push((label, Vector::from(features)));
    }
    Dataset::from_labeled(&samples)
}

/// Writes `data` in the same format `load_csv_dataset` reads.
pub fn save_csv_dataset(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out = std::io::BufWriter::new(File::create(path).map_err(io_err)?);
    for (c, x) in data.samples() {
        let mut line = data.label(c).to_string();
        for v in x.iter() {
            line.push(',');
            line.push_str(&v.to_string());
        }
        line.push('\n');
        out.write_all(line.as_bytes()).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_grouping() {
        let d = parse_csv_dataset("a,1,2\nb,3,4\na,5,6".as_bytes()).unwrap();
        assert_eq!(d.num_classes(), 2);
        assert_eq!(d.dim(), 2);
        assert_eq!(d.class_size(0), 2);
        assert_eq!(d.class_size(1), 1);
        assert_eq!(d.sample(0, 1).as_slice(), &[5.0, 6.0]);
    }

    #[test]
    fn crlf_line_endings() {
        let d = parse_csv_dataset("a,1,2\r\nb,3,4\r\n".as_bytes()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.sample(1, 0).as_slice(), &[3.0, 4.0]);
    }

    #[test]
    fn nan_rejected() {
        let r = parse_csv_dataset("a,1,2\nb,NaN,4\n".as_bytes());
        assert!(matches!(
            r,
            Err(Error::NonFiniteValue { row: 2, column: 2 })
        ));
    }

    #[test]
    fn ragged_rejected() {
        let r = parse_csv_dataset("a,1,2\nb,3\n".as_bytes());
        assert!(matches!(
            r,
            Err(Error::RaggedRows {
                row: 2,
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn garbage_reports_position() {
        let r = parse_csv_dataset("a,1,2\nb,3,x\n".as_bytes());
        assert!(matches!(
            r,
            Err(Error::Parse {
                row: 2,
                column: 3,
                ..
            })
        ));
        let r = parse_csv_dataset("a\nb\n".as_bytes());
        assert!(matches!(r, Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_file_is_io() {
        assert!(matches!(
            load_csv_dataset("/nonexistent/definitely/not.csv"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn save_then_load() {
        let d = parse_csv_dataset("x,0.1,-2.5e-3\ny,3,4\nx,5,6\n".as_bytes()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("d.csv");
        save_csv_dataset(&d, &p).unwrap();
        assert_eq!(load_csv_dataset(&p).unwrap(), d);
    }
}
