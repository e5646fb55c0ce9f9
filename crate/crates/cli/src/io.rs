//! File plumbing: stdin/stdout defaults, and sniffing whether a JSON input
//! is an object file or a morphism file.

use std::io::Read;
use std::path::PathBuf;

use perv_core::{MorphismFile, ObjectFile, PervError};

pub fn read_input(path: &Option<PathBuf>) -> Result<String, PervError> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| PervError::Input(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| PervError::Input(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

pub fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), PervError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| PervError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub enum FileKind {
    Object(ObjectFile),
    Morphism(MorphismFile),
}

/// Parse an input as a morphism file when it has a `source` field, as an
/// object file otherwise. Malformed JSON names the offending field.
pub fn parse_file(text: &str) -> Result<FileKind, PervError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| PervError::Input(format!("malformed JSON: {e}")))?;
    if value.get("source").is_some() {
        let f: MorphismFile = serde_json::from_value(value)
            .map_err(|e| PervError::Input(format!("malformed morphism file: {e}")))?;
        Ok(FileKind::Morphism(f))
    } else {
        let f: ObjectFile = serde_json::from_value(value)
            .map_err(|e| PervError::Input(format!("malformed object file: {e}")))?;
        Ok(FileKind::Object(f))
    }
}

pub fn parse_object(text: &str) -> Result<ObjectFile, PervError> {
    match parse_file(text)? {
        FileKind::Object(f) => Ok(f),
        FileKind::Morphism(_) => {
            Err(PervError::Input("expected an object file, found a morphism file".to_string()))
        }
    }
}
