fn main() {
    let args: Vec<String> = std::env::args().collect();
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, output) = arthur_calc::run(&argv);
    if !output.is_empty() {
        if code == 2 {
            eprintln!("{}", output);
        } else {
            println!("{}", output);
        }
    }
    std::process::exit(code);
}
