use num_complex::Complex;

use super::coupler::{coupler_unitary, Convention};
use super::netlist::{Element, Netlist};
use crate::matrix::CMatrix;
use crate::Real;

/// The `m × m` matrix of a single element embedded in the identity.
pub fn element_unitary<T: Real>(element: &Element<T>, n_modes: usize, convention: Convention) -> CMatrix<T> {
    let mut u = CMatrix::identity(n_modes);
    apply(&mut u, element, convention);
    u
}

/// Mode unitary of the whole netlist: `U = E_k ⋯ E_2 E_1`.
pub fn assemble_unitary<T: Real>(netlist: &Netlist<T>, convention: Convention) -> CMatrix<T> {
    let mut u = CMatrix::identity(netlist.n_modes());
    for element in netlist.elements() {
        apply(&mut u, element, convention);
    }
    u
}

/// Left-multiplies `u` by `element` in place.
fn apply<T: Real>(u: &mut CMatrix<T>, element: &Element<T>, convention: Convention) {
    let cols = u.cols();
    match element {
        Element::Dc { mode_a, mode_b, coupler } => {
            let c = coupler_unitary(coupler, convention);
            let (a, b) = (*mode_a, *mode_b);
            for j in 0..cols {
                let (xa, xb) = (u[(a, j)], u[(b, j)]);
                u[(a, j)] = c[(0, 0)] * xa + c[(0, 1)] * xb;
                u[(b, j)] = c[(1, 0)] * xa + c[(1, 1)] * xb;
            }
        }
        Element::Phase { mode, phase } => {
            let z = Complex::from_polar(T::one(), *phase);
            for j in 0..cols {
                u[(*mode, j)] = u[(*mode, j)] * z;
            }
        }
    }
}
