use super::layers::ParamSet;
use super::tensor::Tensor;
use super::NnError;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

/// Weight file layout:
///   bytes 0..6   magic "GRIPW1"
///   bytes 6..10  u32 little-endian JSON header length H
///   bytes 10..10+H  JSON header (schema, parameter manifest)
///   then         raw little-endian f64 payload, tensors in manifest order
pub const MAGIC: &[u8; 6] = b"GRIPW1";
pub const WEIGHTS_SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    schema: u32,
    params: Vec<ParamEntry>,
}

#[derive(Serialize, Deserialize)]
struct ParamEntry {
    name: String,
    shape: Vec<usize>,
    /// Byte offset into the payload.
    offset: u64,
    /// Value count.
    len: u64,
}

pub fn save_weights(params: &ParamSet, path: &Path) -> Result<(), NnError> {
    let mut entries = Vec::with_capacity(params.len());
    let mut offset = 0u64;
    for (name, t) in params.names.iter().zip(&params.tensors) {
        entries.push(ParamEntry {
            name: name.clone(),
            shape: t.shape().to_vec(),
            offset,
            len: t.len() as u64,
        });
        offset += (t.len() * 8) as u64;
    }
    let header =
        serde_json::to_vec(&Header { schema: WEIGHTS_SCHEMA, params: entries }).map_err(io_err)?;
    let mut f = std::fs::File::create(path)?;
    f.write_all(MAGIC)?;
    f.write_all(&(header.len() as u32).to_le_bytes())?;
    f.write_all(&header)?;
    let mut buf = Vec::with_capacity(1 << 16);
    for t in &params.tensors {
        buf.clear();
        for v in t.values() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        f.write_all(&buf)?;
    }
    f.flush()?;
    Ok(())
}

pub fn load_weights(path: &Path) -> Result<ParamSet, NnError> {
    let mut f = std::fs::File::open(path)?;
    let mut magic = [0u8; 6];
    f.read_exact(&mut magic).map_err(|_| NnError::CorruptFile("truncated magic".into()))?;
    if &magic != MAGIC {
        return Err(NnError::CorruptFile("bad magic".into()));
    }
    let mut len_bytes = [0u8; 4];
    f.read_exact(&mut len_bytes)
        .map_err(|_| NnError::CorruptFile("truncated header length".into()))?;
    let header_len = u32::from_le_bytes(len_bytes) as usize;
    let mut header_bytes = vec![0u8; header_len];
    f.read_exact(&mut header_bytes)
        .map_err(|_| NnError::CorruptFile("truncated header".into()))?;
    let header: Header = serde_json::from_slice(&header_bytes)
        .map_err(|e| NnError::CorruptFile(format!("header json: {e}")))?;
    if header.schema != WEIGHTS_SCHEMA {
        return Err(NnError::VersionMismatch { expected: WEIGHTS_SCHEMA, got: header.schema });
    }
    let mut payload = Vec::new();
    f.read_to_end(&mut payload)?;
    let mut params = ParamSet::new();
    for e in &header.params {
        let start = e.offset as usize;
        let nbytes = e.len as usize * 8;
        if start + nbytes > payload.len() {
            return Err(NnError::CorruptFile(format!("payload truncated for {}", e.name)));
        }
        let count: usize = e.shape.iter().product();
        if count != e.len as usize {
            return Err(NnError::CorruptFile(format!("shape/len mismatch for {}", e.name)));
        }
        let mut data = Vec::with_capacity(e.len as usize);
        for chunk in payload[start..start + nbytes].chunks_exact(8) {
            data.push(f64::from_le_bytes(chunk.try_into().unwrap()));
        }
        params.add(e.name.clone(), Tensor::new(e.shape.clone(), data));
    }
    Ok(params)
}

fn io_err(e: serde_json::Error) -> NnError {
    NnError::CorruptFile(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn sample_params() -> ParamSet {
        let mut rng = SplitMix64::new(12);
        let mut p = ParamSet::new();
        p.add("a.w", Tensor::matrix(3, 2, (0..6).map(|_| rng.gaussian()).collect()));
        p.add("a.b", Tensor::vector(vec![rng.gaussian(), 0.0, -1.5e300]));
        p.add("s", Tensor::scalar(2.0f64.powi(-1000)));
        p
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let p = sample_params();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.bin");
        save_weights(&p, &path).unwrap();
        let back = load_weights(&path).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn truncated_file_is_corrupt() {
        let p = sample_params();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.bin");
        save_weights(&p, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        for cut in [3usize, 8, bytes.len() / 2, bytes.len() - 5] {
            let path2 = dir.path().join(format!("cut{cut}.bin"));
            std::fs::write(&path2, &bytes[..cut]).unwrap();
            assert!(
                matches!(load_weights(&path2), Err(NnError::CorruptFile(_))),
                "cut at {cut} should be corrupt"
            );
        }
    }

    #[test]
    fn wrong_schema_is_version_mismatch() {
        let p = sample_params();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.bin");
        save_weights(&p, &path).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        // Header starts at byte 10; bump the schema value in the JSON text.
        let header_len = u32::from_le_bytes(bytes[6..10].try_into().unwrap()) as usize;
        let text = String::from_utf8(bytes[10..10 + header_len].to_vec()).unwrap();
        let patched = text.replace("\"schema\":1", "\"schema\":9");
        assert_ne!(text, patched);
        bytes.splice(10..10 + header_len, patched.into_bytes());
        let path2 = dir.path().join("w2.bin");
        std::fs::write(&path2, &bytes).unwrap();
        assert!(matches!(
            load_weights(&path2),
            Err(NnError::VersionMismatch { expected: 1, got: 9 })
        ));
    }

    #[test]
    fn documented_byte_offsets_hold() {
        // Cross-check the layout against hand-computed offsets: the first
        // payload f64 sits at 10 + header_len and equals params[0][0].
        let p = sample_params();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.bin");
        save_weights(&p, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[0..6], MAGIC);
        let header_len = u32::from_le_bytes(bytes[6..10].try_into().unwrap()) as usize;
        let payload = 10 + header_len;
        let first = f64::from_le_bytes(bytes[payload..payload + 8].try_into().unwrap());
        assert_eq!(first, p.tensors[0].values()[0]);
        // Second tensor starts 6 f64s (48 bytes) in.
        let second = f64::from_le_bytes(bytes[payload + 48..payload + 56].try_into().unwrap());
        assert_eq!(second, p.tensors[1].values()[0]);
        // Total size: magic + len + header + payload values.
        let total_values: usize = p.tensors.iter().map(|t| t.len()).sum();
        assert_eq!(bytes.len(), 10 + header_len + 8 * total_values);
    }
}
