use pyo3::prelude::*;

#[pymodule]
fn indexcode_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
