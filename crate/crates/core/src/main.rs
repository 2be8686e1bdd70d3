fn main() -> std::process::ExitCode {
    sepfam::cli::run()
}
