// Writes the three standard figures as SVG through the command-line front end.
//
// `cargo run --example svg_figures -- out_dir`

use std::error::Error;
use std::path::{Path, PathBuf};

use linegraph_spectra::cli;

pub fn run_example_in(dir: &Path) -> Result<Vec<PathBuf>, Box<dyn Error>> {
    std::fs::create_dir_all(dir)?;
    let jobs: [(&str, &[&str]); 3] = [
        (
            "perturbation.svg",
            &[
                "perturb",
                "--n",
                "4",
                "--m1",
                "2",
                "--m2",
                "4",
                "--epsilon",
                "0.1",
            ],
        ),
        (
            "error_sweep.svg",
            &[
                "sweep",
                "--n",
                "4",
                "--m1",
                "2",
                "--m2",
                "4",
                "--eps-min",
                "0.02",
                "--eps-max",
                "0.2",
                "--steps",
                "10",
            ],
        ),
        (
            "tracking.svg",
            &[
                "track",
                "--n",
                "50",
                "--m1",
                "26",
                "--m2",
                "50",
                "--eps-min",
                "0",
                "--eps-max",
                "0.2",
                "--steps",
                "40",
            ],
        ),
    ];
    let mut written = Vec::new();
    for (file, args) in jobs {
        let path = dir.join(file);
        let mut argv = vec!["linegraph".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        argv.extend([
            "--format".into(),
            "svg".into(),
            "--output".into(),
            path.display().to_string(),
        ]);
        let mut stderr = Vec::new();
        let code = cli::run(argv, &mut std::io::sink(), &mut stderr);
        if code != 0 {
            return Err(
                format!("{file}: exit {code}: {}", String::from_utf8_lossy(&stderr)).into(),
            );
        }
        println!("wrote {}", path.display());
        written.push(path);
    }
    Ok(written)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("linegraph-figures-{}", std::process::id()));
    let written = run_example_in(&dir)?;
    for path in &written {
        let svg = std::fs::read_to_string(path)?;
        if !svg.starts_with("<svg") || !svg.trim_end().ends_with("</svg>") {
            return Err(format!("{} is not an SVG document", path.display()).into());
        }
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args().nth(1) {
        Some(dir) => run_example_in(Path::new(&dir)).map(|_| ()),
        None => run_example_in(Path::new("figures")).map(|_| ()),
    }
}
