use std::io::Write;

fn main() {
    let out = transita::dispatch(std::env::args_os());
    std::io::stdout().write_all(&out.stdout).ok();
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
