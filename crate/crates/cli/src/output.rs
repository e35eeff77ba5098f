use std::io::Write;
use std::path::Path;

use disc_ergodics::Complex;
use serde::Serialize;

use crate::{CliError, Format, OutputArgs};

/// Fixed formatting with 17 significant digits, so doubles survive the
/// round trip through text.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex(z: Complex) -> [String; 2] {
    [float(z.re), float(z.im)]
}

pub struct Csv {
    writer: csv::Writer<Vec<u8>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Result<Self, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Self { writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields)?;
        Ok(())
    }

    pub fn finish(self) -> Result<Vec<u8>, CliError> {
        self.writer
            .into_inner()
            .map_err(|e| CliError::Usage(format!("csv buffer: {}", e.error())))
    }
}

pub fn report<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes `bytes` to `<out>/<stem>.<ext>`, or to stdout without `--out`.
pub fn emit(args: &OutputArgs, stem: &str, format: Format, bytes: &[u8]) -> Result<(), CliError> {
    let ext = match format {
        Format::Csv => "csv",
        Format::Report => "json",
    };
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|source| io_error(dir, source))?;
            let path = dir.join(format!("{stem}.{ext}"));
            std::fs::write(&path, bytes).map_err(|source| io_error(&path, source))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|source| io_error(Path::new("<stdout>"), source))
        }
    }
}

pub fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}
