//! Driving the command-line front end in-process, with captured output.

fn main() {
    let params = r#"{"upper":[[1,1]],"lower":[[2,1]]}"#;
    let runs: [&[&str]; 3] = [
        &["eval", "--params", params, "--sweep", "z:lin:-2:2:5", "--format", "table"],
        &["check", "h1", "--params", params, "--nmax", "16", "--format", "table"],
        &["bounds", "luke", "--params", params, "--sweep", "z:log:0.1:20:5", "--format", "csv"],
    ];
    for args in runs {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = foxwright::cli::run_with(std::iter::once("foxwright").chain(args.iter().copied()), &mut out, &mut err);
        println!("$ foxwright {}\n{}{}(exit {code})\n", args.join(" "), String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
}
