use expcert::format::{parse_points, parse_system};
use expcert::{ExactComplex, ExpSystem};

pub fn fixture_text(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// A system fixture and its companion points file.
pub fn load(stem: &str) -> (ExpSystem, Vec<Vec<ExactComplex>>) {
    let system = parse_system(&fixture_text(&format!("{stem}.sys"))).expect("fixture system parses");
    let points = parse_points(&fixture_text(&format!("{stem}.pts")), system.dim())
        .expect("fixture points parse")
        .points;
    (system, points)
}
