fn main() { burnside_cli::main_entry(); }
