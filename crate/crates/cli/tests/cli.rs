use std::process::{Command, Output};

use primeinfo_cli::{run_cli, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primeinfo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn primes_to_ten() {
    let o = run(&["primes", "--limit", "10", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "p\n2\n3\n5\n7\n");
    let o = run(&["primes", "-n", "1"]);
    assert_eq!(stdout(&o), "p\n");
}

#[test]
fn sweep_single_point() {
    let o = run(&["sweep", "--min", "10", "--max", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "N,log_N,pi_N,theta_N,mertens_sum,chebyshev_gap,entropy_decomp_sum,entropy_decomp_gap,\
         info_per_prime,info_per_prime_ratio_nats,info_per_prime_ratio_bits"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..3], &["10", "2.30258509299", "4"]);
    let mertens: f64 = row[4].parse().unwrap();
    assert!((mertens - 1.312652).abs() < 1e-6);
    assert!(lines.next().is_none());
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let o = run(&["sweep", "--min", "10", "--max", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("--max"), "{err}");

    for args in [
        &["primes"][..],
        &["primes", "--limit", "ten"],
        &["sweep", "--min", "1", "--max", "10"],
        &[
            "sweep",
            "--min",
            "10",
            "--max",
            "100",
            "--points-per-decade",
            "0",
        ],
        &["sweep", "--min", "10", "--max", "100", "--base", "10"],
        &["entropy", "-n", "100", "--prime", "4"],
        &["codec-bench", "-n", "2000000"],
        &["oracle", "20000"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(EXIT_USAGE), "{args:?}");
    }
}

#[test]
fn runtime_errors_exit_one() {
    let o = run(&["primes", "-n", "100", "--out", "/nonexistent-dir/p.csv"]);
    assert_eq!(o.status.code(), Some(EXIT_RUNTIME));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("/nonexistent-dir/p.csv"), "{err}");

    let o = Command::new(env!("CARGO_BIN_EXE_primeinfo"))
        .args(["primes", "-n", "1e8"])
        .env("PRIMEINFO_MEMORY_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_RUNTIME));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sieve"));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(run_cli(["primeinfo", "--help"]), EXIT_OK);
    assert_eq!(run_cli(["primeinfo", "--version"]), EXIT_OK);
    assert_eq!(run_cli(["primeinfo", "sweep", "--min", "10"]), EXIT_USAGE);
}

#[test]
fn json_mirrors_csv_fields() {
    let o = run(&[
        "sweep",
        "--min",
        "10",
        "--max",
        "100",
        "--points-per-decade",
        "1",
        "--format",
        "json",
    ]);
    let v: Vec<String> = stdout(&o)
        .lines()
        .filter_map(|l| {
            l.trim()
                .strip_prefix('"')
                .and_then(|l| l.split('"').next())
                .map(str::to_owned)
        })
        .collect();
    assert_eq!(&v[..3], &["N", "log_N", "pi_N"]);
    assert_eq!(v.len(), 22);
}

#[test]
fn outputs_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("primeinfo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let runs = [
        vec![
            "sweep",
            "--min",
            "100",
            "--max",
            "1e5",
            "--base",
            "2",
            "--weight-mode",
            "empirical",
        ],
        vec![
            "codec-bench",
            "-n",
            "1e5",
            "--mode",
            "monte-carlo",
            "--seed",
            "9",
            "--samples",
            "3000",
        ],
        vec![
            "valuation",
            "-n",
            "1e5",
            "--prime",
            "2",
            "--prime",
            "7",
            "--samples",
            "5000",
            "--seed",
            "3",
        ],
        vec!["entropy", "-n", "1000", "--format", "json"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut files = Vec::new();
        for threads in ["1", "3", "0"] {
            let path = dir.join(format!("{i}-{threads}.out"));
            let mut a = args.clone();
            a.extend(["--threads", threads, "--out", path.to_str().unwrap()]);
            let o = run(&a);
            assert!(
                o.status.success(),
                "{a:?}: {}",
                String::from_utf8_lossy(&o.stderr)
            );
            assert!(o.stdout.is_empty());
            files.push(std::fs::read(&path).unwrap());
        }
        assert!(files.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn valuation_and_entropy_tables() {
    let o = run(&["valuation", "-n", "10", "--prime", "3"]);
    assert_eq!(
        stdout(&o),
        "p,k,count,probability,sampled_count\n3,0,7,0.7,\n3,1,2,0.2,\n3,2,1,0.1,\n"
    );
    let o = run(&["entropy", "-n", "10", "--prime", "3"]);
    let text = stdout(&o);
    let row: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    assert_eq!(row[1], 0.4);
    assert!((row[5] - 0.801819).abs() < 1e-6);
    approx::assert_relative_eq!(row[7], row[6] - row[5], max_relative = 1e-9);
}

#[test]
fn oracle_subcommand() {
    let o = run(&["oracle", "1000"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS oracle n_max=1000"));
    assert!(run(&["oracle", "--limit", "1"]).status.success());
}
