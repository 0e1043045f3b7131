fn main() -> std::process::ExitCode {
    vandermonde::cli::run()
}
