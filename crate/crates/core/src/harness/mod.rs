//! Reference data, error metrics and regeneration of the comparison tables.

mod output;
mod published;
mod reference;
mod tables;

pub use output::{parse_table1_csv, table1_to_csv, table2_to_csv, tables_to_json, Precision, MISSING};
pub use published::{
    published_energy, published_epsilon, published_m_im, PUBLISHED_EPSILON, PUBLISHED_M_IM, PUBLISHED_T,
};
pub use reference::{
    builtin_reference, load_reference_csv, parse_reference_csv, reference_to_csv, ReferenceDataset, CSV_HEADER,
    TABLE_STATES,
};
pub use tables::{
    compare_table2, generate_table1, generate_table2, model_level, relative_error, standard_table1, Cell, Compared,
    ComparisonRow, Environment, Flag, Mismatch, Table1, Table1Row, Table2, MATCH_TOLERANCE, TABLE_MODELS,
};
