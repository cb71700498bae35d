use std::io::Write;

fn main() {
    let out = mstruct_cli::run(std::env::args_os());
    std::io::stdout().write_all(&out.stdout).ok();
    std::io::stderr().write_all(&out.stderr).ok();
    std::process::exit(out.code);
}
