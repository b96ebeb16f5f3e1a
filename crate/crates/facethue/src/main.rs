fn main() -> std::process::ExitCode {
    facethue::cli::main()
}
