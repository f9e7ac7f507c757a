fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let code = eventscore::cli::run(std::env::args_os(), |key| std::env::var(key).ok());
    std::process::exit(code);
}
