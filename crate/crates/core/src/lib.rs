//! Instruction sequences over RAM memories: program algebra, threads,
//! thread extraction, a semi-realistic RAM instruction set, and execution
//! with uniform and bit-oriented time and space measures.

pub mod bits;
pub mod exec;
pub mod extract;
pub mod isa;
pub mod memory;
pub mod natural;
pub mod pga;
pub mod thread;

pub use bits::BitString;
pub use extract::{behaviourally_equivalent, extract};
pub use isa::SrramInstruction;
pub use memory::{MemoryState, RamMemory};
pub use natural::Natural;
pub use pga::{parse_sequence, InstructionSequence};
pub use thread::RegularThread;
