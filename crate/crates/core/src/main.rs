use clap::Parser;

fn main() {
    let cli = match tcore::cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { tcore::cli::EXIT_USAGE } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = tcore::cli::run(&cli, &mut out, &mut std::io::stderr());
    drop(out);
    std::process::exit(code);
}
