use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let as_json = argv.iter().skip(1).any(|a| a == "--json");
    let r = fg_cli::run(&argv);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&r.json).expect("JSON output serializes"));
    } else if r.code == 0 || r.code == 3 {
        print!("{}", r.text);
    } else {
        eprint!("{}", r.text);
    }
    ExitCode::from(r.code as u8)
}
