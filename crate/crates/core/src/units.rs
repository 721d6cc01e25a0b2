/// Reduced Planck constant and speed of light in the unit system in use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub hbar: f64,
    pub c: f64,
}

impl Default for Units {
    fn default() -> Self {
        Self { hbar: 1.0, c: 1.0 }
    }
}
