//! Desk-scale bounds. Every refusal raised against these maps to `Error::SizeBound`.

/// Largest field order p^k that `FieldCtx::new` will build.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

/// Field orders up to this value get a precomputed multiplication table.
pub const MUL_TABLE_ORDER: u64 = 256;

/// Largest code length p^s for quotient-ring work.
pub const MAX_LENGTH: u64 = 256;

/// Largest number of ideals an enumeration may yield.
pub const MAX_ENUMERATION: u64 = 1_000_000;

/// Largest number of codewords a word set may hold.
pub const MAX_WORDS: u64 = 1 << 20;

/// Largest ambient F_p-dimension for brute-force duals.
pub const MAX_AMBIENT_DIM: usize = 64;

/// Largest |R[x]/<x^n - 1>| for exhaustive ideal enumeration.
pub const MAX_EXHAUSTIVE_RING: u64 = 4096;

/// Largest odd group order for which cyclotomic classes are materialized.
pub const MAX_GROUP_ORDER: u64 = 1 << 16;

/// Largest group order accepted by the counting formulas.
pub const MAX_COUNT_GROUP_ORDER: u64 = 1 << 32;

/// Largest bit length of any count the crate will compute.
pub const MAX_COUNT_BITS: u64 = 1 << 26;
