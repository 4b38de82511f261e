//! Directional-coupler circuits: netlists, the `.pqc` text format and
//! assembly of the mode unitary.

mod cnot;
mod coupler;
mod netlist;
mod unitary;

pub use cnot::{cnot_netlist, CnotEtas, LogicalEncoding, CNOT_LABELS, LOWER_THIRD_LABELS};
pub use coupler::{coupler_unitary, Convention, CouplerSpec};
pub use netlist::{parse_netlist, Element, Netlist};
pub use unitary::{assemble_unitary, element_unitary};
