use std::io::Write;

use serde::Serialize;

use crate::{HalfInt, Result};

use super::{KernelMethod, KernelValue};

/// One row of an exported kernel table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KernelRow {
    pub s: f64,
    pub x: HalfInt,
    pub t: f64,
    pub y: HalfInt,
    pub value: f64,
    pub method: KernelMethod,
    pub error_estimate: f64,
}

impl KernelRow {
    pub fn new(s: f64, x: HalfInt, t: f64, y: HalfInt, v: KernelValue) -> Self {
        KernelRow {
            s,
            x,
            t,
            y,
            value: v.value,
            method: v.method,
            error_estimate: v.error_estimate,
        }
    }
}

/// CSV with columns s, x, t, y, value, method, error_estimate.
pub fn write_kernel_table<W: Write>(out: W, rows: &[KernelRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| crate::Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_exact_half_integers() {
        let v = KernelValue {
            value: 0.25,
            method: KernelMethod::Ratio,
            error_estimate: 0.0,
        };
        let mut buf = Vec::new();
        write_kernel_table(&mut buf, &[KernelRow::new(0.0, HalfInt::new(1), 0.0, HalfInt::new(-2), v)])
            .unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "s,x,t,y,value,method,error_estimate\n0.0,3/2,0.0,-3/2,0.25,ratio,0.0\n");
    }
}
