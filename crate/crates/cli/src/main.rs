fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = twlab_cli::run(std::env::args_os(), &mut out, &mut err);
    use std::io::Write;
    let _ = out.flush();
    std::process::exit(code);
}
