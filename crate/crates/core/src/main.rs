fn main() {
    let out = rigidfield::cli::run_args(std::env::args_os());
    print!("{}", out.text);
    std::process::exit(out.code);
}
