use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of pushing the input part `Q` of the `y = ¬x` machine from 0 to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NotMachineOutcome {
    pub x: bool,
    pub y: bool,
    /// `(X/Q, Y/Q)` before the motion.
    pub before: (f64, f64),
    /// `(X/Q, Y/Q)` after the motion.
    pub after: (f64, f64),
    /// `Q = X + Y` and `Q² = X² + Y²` at the after-state with `Q = 1`.
    pub equations_hold: bool,
}

/// Probability that part X moves with Q.
pub fn not_machine_probability(m_x: f64, m_y: f64, q_mass: f64) -> Result<f64> {
    if [m_x, m_y, q_mass]
        .iter()
        .any(|m| !m.is_finite() || *m < 0.0)
        || m_x + m_y <= 0.0
    {
        return Err(Error::InvalidMasses(format!(
            "m_X = {m_x}, m_Y = {m_y}, q_mass = {q_mass}"
        )));
    }
    Ok((q_mass + m_x) / (2.0 * q_mass + m_x + m_y))
}

/// Either X or Y moves with Q, never both, with probability proportional to
/// the mass moving with Q.
pub fn not_machine<R: Rng + ?Sized>(
    m_x: f64,
    m_y: f64,
    q_mass: f64,
    rng: &mut R,
) -> Result<NotMachineOutcome> {
    let p_x = not_machine_probability(m_x, m_y, q_mass)?;
    let x_moves = rng.gen::<f64>() < p_x;
    let after = if x_moves { (1.0, 0.0) } else { (0.0, 1.0) };
    let q = 1.0;
    let equations_hold = q == after.0 + after.1 && q * q == after.0 * after.0 + after.1 * after.1;
    Ok(NotMachineOutcome {
        x: x_moves,
        y: !x_moves,
        before: (0.5, 0.5),
        after,
        equations_hold,
    })
}
