fn main() { std::process::exit(ufgraph::cli::main_with_args(std::env::args_os())); }
