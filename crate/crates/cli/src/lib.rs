//! Expression front end and command driver for `rcx-core`.

pub mod commands;
pub mod eval;
pub mod expr;

pub use commands::{run, Cli, CliError, Command, Format, Output};
pub use eval::{Env, EvalError};
pub use expr::{parse_expr, Expr, ExprKind, SyntaxError};
