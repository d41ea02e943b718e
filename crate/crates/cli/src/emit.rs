use std::io::Write;

use distill_core::optimizer::SweepRecord;
use serde::Serialize;

use crate::Failure;

/// Shortest round-trip formatting is not fixed-width; 17 significant
/// digits in scientific form are.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn sweep_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<(), Failure> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["index", "family", "value"])?;
    for r in records {
        w.write_record([r.index.to_string(), r.family.clone(), float(r.value)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn json_line<T: Serialize, W: Write>(value: &T, mut out: W) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 0.5, 1.0 / 3.0, 0.4399999999999999, 5.0 / 9.0, 1e-300] {
            assert_eq!(float(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_layout() {
        let recs = vec![
            SweepRecord { index: 0, family: "general".into(), value: 0.25 },
            SweepRecord { index: 1, family: "normal_a".into(), value: 0.125 },
        ];
        let mut buf = Vec::new();
        sweep_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "index,family,value\n0,general,2.5000000000000000e-1\n1,normal_a,1.2500000000000000e-1\n");
    }
}
