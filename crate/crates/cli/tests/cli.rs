use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn dwp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwp")).args(args).output().expect("spawn dwp")
}

fn ok(args: &[&str]) -> String {
    let out = dwp(args);
    assert!(
        out.status.success(),
        "dwp {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn stdout_value(stdout: &str, key: &str) -> f64 {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key)?.trim().parse().ok())
        .unwrap_or_else(|| panic!("no {key} in {stdout}"))
}

#[test]
fn experiment_writes_one_row_per_run_with_rrh_on() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("e16");
    ok(&["experiment", "--id", "16", "--runs", "5", "--seed", "42", "--events", "40", "-o", p(&out)]);

    let rows = csv_rows(&out.join("results.csv"));
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[0] == "16"));
    let config = fs::read_to_string(out.join("config.toml")).unwrap();
    assert!(config.contains("rrh_enabled = true"));
    assert!(config.contains("seed = 42"));
    for i in 0..5 {
        for ext in ["genome", "txt", "ppm"] {
            assert!(out.join(format!("run_{i:02}.{ext}")).is_file());
        }
    }
    let ppm = fs::read(out.join("run_00.ppm")).unwrap();
    assert!(ppm.starts_with(b"P6\n480 480\n255\n"));
}

#[test]
fn unknown_experiment_fails() {
    let tmp = TempDir::new().unwrap();
    let out = dwp(&["experiment", "--id", "99", "-o", p(tmp.path())]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("99"));
}

#[test]
fn reruns_and_thread_counts_give_identical_output() {
    let tmp = TempDir::new().unwrap();
    let run = |name: &str, jobs: &str| {
        let out = tmp.path().join(name);
        ok(&[
            "experiment", "--id", "1", "--runs", "3", "--seed", "7", "--events", "30", "--jobs", jobs, "-o",
            p(&out),
        ]);
        out
    };
    let a = run("a", "1");
    let b = run("b", "1");
    let c = run("c", "3");
    for file in ["results.csv", "summary.csv", "trace.csv", "run_02.genome", "run_02.ppm"] {
        let fa = fs::read(a.join(file)).unwrap();
        assert_eq!(fa, fs::read(b.join(file)).unwrap(), "{file} differs between reruns");
        assert_eq!(fa, fs::read(c.join(file)).unwrap(), "{file} differs across --jobs");
    }
}

#[test]
fn replay_reproduces_recorded_fitness() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("e");
    ok(&["experiment", "--id", "16", "--runs", "2", "--seed", "3", "--events", "40", "-o", p(&out)]);
    let rows = csv_rows(&out.join("results.csv"));

    let replay_dir = tmp.path().join("replay");
    let stdout = ok(&["replay", p(&out.join("run_01.genome")), "--rrh", "-o", p(&replay_dir)]);
    let recorded: f64 = rows[1][3].parse().unwrap();
    assert_eq!(stdout_value(&stdout, "fitness"), recorded);
    assert_eq!(stdout_value(&stdout, "A"), rows[1][5].parse::<f64>().unwrap());
    assert_eq!(stdout_value(&stdout, "B"), rows[1][6].parse::<f64>().unwrap());
    assert_eq!(
        fs::read(replay_dir.join("run_01.map.txt")).unwrap(),
        fs::read(out.join("run_01.txt")).unwrap()
    );
    assert!(replay_dir.join("run_01.replay.toml").is_file());
}

#[test]
fn config_file_round_trips() {
    let tmp = TempDir::new().unwrap();
    let first = tmp.path().join("first");
    ok(&["experiment", "--id", "17", "--runs", "2", "--seed", "9", "--events", "20", "-o", p(&first)]);
    let second = tmp.path().join("second");
    ok(&["experiment", "--config", p(&first.join("config.toml")), "-o", p(&second)]);
    let best = |dir: &Path| -> Vec<String> {
        csv_rows(&dir.join("results.csv")).into_iter().map(|r| r[3].clone()).collect()
    };
    assert_eq!(best(&first), best(&second));
}

#[test]
fn replay_at_large_scale() {
    let tmp = TempDir::new().unwrap();
    let genome = tmp.path().join("g.genome");
    let out = tmp.path().join("g");
    ok(&["evolve", "--states", "16", "--events", "10", "--seed", "5", "--rrh", "-o", p(&out)]);
    fs::copy(out.join("best.genome"), &genome).unwrap();

    let stdout = ok(&[
        "replay", p(&genome), "--grid", "120x120", "--max-rooms", "800", "--proposal-budget", "15625", "--rrh",
        "-o", p(tmp.path()),
    ]);
    let rooms = stdout_value(&stdout, "rooms");
    assert!((1.0..=800.0).contains(&rooms));
    let text = fs::read_to_string(tmp.path().join("g.map.txt")).unwrap();
    assert!(text.starts_with("120 120\n"));

    // Without the recent-room hack the focal selector cannot address 800 rooms.
    let out = dwp(&["replay", p(&genome), "--grid", "120x120", "--max-rooms", "800", "-o", p(tmp.path())]);
    assert!(!out.status.success());
}

#[test]
fn mask_keeps_rooms_inside_the_arena() {
    let tmp = TempDir::new().unwrap();
    let mut mask = String::from("40 40\n");
    for y in 0..40 {
        let row: String = (0..40)
            .map(|x| if x < 5 || y < 5 || x >= 35 || y >= 35 { '#' } else { '.' })
            .collect();
        mask.push_str(&row);
        mask.push('\n');
    }
    let mask_path = tmp.path().join("ring.mask");
    fs::write(&mask_path, mask).unwrap();
    let out = tmp.path().join("m");
    ok(&[
        "evolve", "--events", "30", "--grid", "40x40", "--mask", p(&mask_path), "--seed", "11", "-o", p(&out),
    ]);
    let text = fs::read_to_string(out.join("best.txt")).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 40);
    let mut occupied = 0;
    for (y, row) in rows.iter().enumerate() {
        for (x, c) in row.chars().enumerate() {
            let outside = x < 5 || y < 5 || x >= 35 || y >= 35;
            if matches!(c, 'S' | 'R' | 'C') {
                occupied += 1;
                assert!(!outside, "room cell at ({x},{y}) on forbidden ground");
            } else {
                assert_eq!(c == '#', outside, "cell ({x},{y})");
            }
        }
    }
    assert!(occupied > 16);
}

#[test]
fn render_converts_a_map_dump() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("e");
    ok(&["evolve", "--events", "5", "-o", p(&out)]);
    let image = tmp.path().join("map.ppm");
    ok(&["render", p(&out.join("best.txt")), "--cell-size", "2", "--no-outline", "-o", p(&image)]);
    let bytes = fs::read(&image).unwrap();
    let header = b"P6\n160 160\n255\n";
    assert!(bytes.starts_with(header));
    assert_eq!(bytes.len(), header.len() + 160 * 160 * 3);
    assert!(tmp.path().join("map.toml").is_file());
}

#[test]
fn sweep_runs_the_cartesian_product() {
    let tmp = TempDir::new().unwrap();
    let grid = tmp.path().join("grid.toml");
    fs::write(&grid, "population_size = [10, 32]\n").unwrap();
    let out = tmp.path().join("s");
    ok(&["sweep", p(&grid), "--runs", "2", "--events", "20", "-o", p(&out)]);
    let rows = csv_rows(&out.join("sweep_summary.csv"));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][1], "10");
    assert_eq!(rows[1][1], "32");
    assert_eq!(csv_rows(&out.join("results.csv")).len(), 4);

    fs::write(&grid, "").unwrap();
    assert!(!dwp(&["sweep", p(&grid), "-o", p(&out)]).status.success());
}

#[test]
fn malformed_inputs_exit_nonzero() {
    let tmp = TempDir::new().unwrap();
    let bad = tmp.path().join("bad.genome");
    fs::write(&bad, "not a genome\n").unwrap();
    let out = dwp(&["replay", p(&bad), "-o", p(tmp.path())]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let map = tmp.path().join("bad.txt");
    fs::write(&map, "3 1\n.Q.\n").unwrap();
    assert!(!dwp(&["render", p(&map), "-o", p(&tmp.path().join("x.ppm"))]).status.success());

    assert!(!dwp(&["evolve", "--grid", "80", "-o", p(tmp.path())]).status.success());
}
