use std::path::{Path, PathBuf};

use q4d_cli::{run, Report, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use q4d_core::braid::BraidWord;
use q4d_core::format::{parse_diagram, parse_rho, write_diagram};
use q4d_core::presentation::relators_equivalent;
use q4d_core::tangle::{FourPlaneDiagram, Tangle, TrivialTangle};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn q4d(args: &[&str]) -> Report {
    run(std::iter::once("q4d").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let r = q4d(args);
    assert_eq!(r.code, EXIT_OK, "{args:?}: {}", r.stderr);
    r.stdout
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn spun_trefoil_cover_json() {
    let out = ok(&[
        "cover",
        &fixture("spun_trefoil.q4d"),
        "--rho",
        &fixture("spun_trefoil.rho"),
        "--json",
    ]);
    assert!(
        out.contains(r#""H": [[1,[]],[0,[]],[1,[]],[1,[]],[0,[]],[1,[]]]"#),
        "{out}"
    );
    assert!(out.contains(r#""genus": 4"#));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lagrangians"].as_array().unwrap().len(), 4);
    assert_eq!(v["basis_generators"][0], "x3_1");

    let rev = ok(&[
        "cover",
        &fixture("spun_trefoil.q4d"),
        "--rho",
        &fixture("spun_trefoil.rho"),
        "--tree",
        "bfs-reversed",
        "--json",
    ]);
    let w: serde_json::Value = serde_json::from_str(&rev).unwrap();
    assert_eq!(v["H"], w["H"]);
}

#[test]
fn spun_trefoil_riemann_hurwitz() {
    let out = ok(&[
        "rh",
        &fixture("spun_trefoil.q4d"),
        "--rho",
        &fixture("spun_trefoil.rho"),
    ]);
    assert!(out.starts_with("genus: 4\n"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "rh",
        &fixture("spun_trefoil.q4d"),
        "--rho",
        &fixture("spun_trefoil.rho"),
        "--json",
    ]))
    .unwrap();
    assert_eq!(v["genus"], 4);
    assert_eq!(v["lifted_rank"], 8);
    assert_eq!(v["agree"], true);
    assert_eq!(v["cyclic_bound"], 1 + 6 * 2 - 3);
}

#[test]
fn heegaard_fixtures() {
    let out = ok(&["heegaard", &fixture("lens3.q4d")]);
    assert!(out.starts_with("H1: Z/3\n"), "{out}");
    let out = ok(&["heegaard", &fixture("rp3.q4d"), "--json"]);
    assert!(out.contains(r#""H1": [0,[2]]"#), "{out}");
    for order in ["2,1,3,4", "4,3,2,1", "1,3,2,4"] {
        let out = ok(&["heegaard", &fixture("rp3.q4d"), "--order", order, "--json"]);
        assert!(out.contains(r#""H1": [0,[2]]"#), "{order}: {out}");
    }
    let out = ok(&["heegaard", &fixture("spun_trefoil.q4d")]);
    assert!(out.starts_with("H1: 0\n"));
}

#[test]
fn surface_and_presentations() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["surface", &fixture("lens3.q4d"), "--json"])).unwrap();
    assert_eq!(v["euler_characteristic"], 0);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["homology"], serde_json::json!([[1, []], [2, []], [1, []]]));

    let text = ok(&["presentations", &fixture("spun_trefoil.q4d")]);
    assert!(text.starts_with("# sphere\ngenerators: x0 x1"));
    assert_eq!(text.matches("# link").count(), 6);
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["presentations", &fixture("spun_trefoil.q4d"), "--json"])).unwrap();
    assert_eq!(v["sphere"]["relators"].as_array().unwrap().len(), 1);
    for t in v["tangles"].as_array().unwrap() {
        assert_eq!(t["abelianization"], serde_json::json!([6, []]));
    }
}

#[test]
fn json_is_byte_identical() {
    let (a, r) = (fixture("spun_trefoil.q4d"), fixture("spun_trefoil.rho"));
    let runs: [Vec<&str>; 6] = [
        vec!["validate", &a, "--json"],
        vec!["surface", &a, "--json"],
        vec!["heegaard", &a, "--json"],
        vec!["presentations", &a, "--json"],
        vec!["cover", &a, "--rho", &r, "--json"],
        vec!["rh", &a, "--rho", &r, "--json"],
    ];
    for args in runs {
        assert_eq!(ok(&args), ok(&args), "{args:?}");
    }
    assert_eq!(
        ok(&["gen", "lens", "-p", "4", "--json"]),
        ok(&["gen", "lens", "-p", "4", "--json"])
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture("spun_trefoil.q4d");

    assert_eq!(q4d(&["validate", &a]).code, EXIT_OK);
    assert_eq!(q4d(&["--help"]).code, EXIT_OK);
    assert_eq!(q4d(&[]).code, EXIT_USAGE);
    assert_eq!(q4d(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(q4d(&["validate", "/nonexistent/x.q4d"]).code, EXIT_USAGE);
    assert_eq!(q4d(&["heegaard", &a, "--order", "1,1,2,3"]).code, EXIT_USAGE);
    assert_eq!(q4d(&["gen", "lens", "-p", "0"]).code, EXIT_USAGE);
    assert_eq!(q4d(&["gen", "spun", "--strands", "3"]).code, EXIT_USAGE);
    assert_eq!(q4d(&["move", "braid", &a, "-w", "s12"]).code, EXIT_USAGE);

    let bad = write(
        dir.path(),
        "bad.q4d",
        "mode: plat\nbridges: 2\ntangle1: s9\ntangle2:\ntangle3:\ntangle4:\n",
    );
    let r = q4d(&["validate", &bad]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(
        r.stderr.contains("line 3, column 10") && r.stderr.contains("out of range"),
        "{}",
        r.stderr
    );

    let app = parse_diagram(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let mut t = app.tangles().clone();
    t[0] = Tangle::Plat(TrivialTangle::new(6, BraidWord::from_signed(12, &[1, 2, 3]).unwrap()).unwrap());
    let corrupted = write_diagram(&FourPlaneDiagram::new(6, t).unwrap());
    let corrupted = write(dir.path(), "corrupted.q4d", &corrupted);
    let r = q4d(&["validate", &corrupted]);
    assert_eq!(r.code, EXIT_INVALID, "{}", r.stdout);
    assert!(r.stdout.contains("INVALID"));
    let v: serde_json::Value = serde_json::from_str(&q4d(&["validate", &corrupted, "--json"]).stdout).unwrap();
    assert_eq!(v["passed"], false);

    let images: String = (0..12)
        .map(|i| format!("x{i}: {}\n", if i < 2 { "(1 2)" } else { "()" }))
        .collect();
    let rho = write(dir.path(), "nonextending.rho", &format!("sheets: 2\n{images}"));
    let r = q4d(&["cover", &a, "--rho", &rho]);
    assert_eq!(r.code, EXIT_INVALID, "{}", r.stderr);
    let short = write(dir.path(), "short.rho", "sheets: 2\nx0: (1 2)\n");
    assert_eq!(q4d(&["cover", &a, "--rho", &short]).code, EXIT_USAGE);
}

#[test]
fn generators_round_trip() {
    let lens = ok(&["gen", "lens", "-p", "3"]);
    assert_eq!(lens, std::fs::read_to_string(fixture("lens3.q4d")).unwrap());

    let spun = parse_diagram(&ok(&["gen", "spun", "--strands", "4", "-w", "s2 s2 s2"])).unwrap();
    let app = parse_diagram(&std::fs::read_to_string(fixture("spun_trefoil.q4d")).unwrap()).unwrap();
    for i in 0..4 {
        assert!(relators_equivalent(
            &spun.tangle(i).relators(),
            &app.tangle(i).relators()
        ));
    }

    let dir = tempfile::tempdir().unwrap();
    let l2 = write(dir.path(), "l2.q4d", &ok(&["gen", "lens", "-p", "2"]));
    let l3 = fixture("lens3.q4d");
    let connected = write(dir.path(), "c.q4d", &ok(&["gen", "sum", &l2, &l3, "--connected"]));
    assert!(ok(&["heegaard", &connected]).starts_with("H1: Z/6\n"));
    assert_eq!(q4d(&["validate", &connected]).code, EXIT_OK);
    let distant = write(dir.path(), "d.q4d", &ok(&["gen", "sum", &l2, &l3]));
    assert!(ok(&["heegaard", &distant]).starts_with("H1: Z/6\n"));
    assert_eq!(
        q4d(&["gen", "sum", &fixture("spun_trefoil.q4d"), &l2, "--connected"]).code,
        EXIT_INVALID
    );

    let relator_text = std::fs::read_to_string(fixture("spun_trefoil.q4d")).unwrap();
    let once = parse_diagram(&relator_text).unwrap();
    let twice = parse_diagram(&write_diagram(&once)).unwrap();
    assert_eq!(once, twice);
}

#[test]
fn braid_move_transports_rho() {
    let dir = tempfile::tempdir().unwrap();
    let (a, r) = (fixture("spun_trefoil.q4d"), fixture("spun_trefoil.rho"));
    let moved_rho = dir.path().join("moved.rho").to_string_lossy().into_owned();
    let moved = ok(&[
        "move",
        "braid",
        &a,
        "-w",
        "s3 s5' s1 s11",
        "--rho",
        &r,
        "--rho-out",
        &moved_rho,
    ]);
    let moved = write(dir.path(), "moved.q4d", &moved);
    let d = parse_diagram(&std::fs::read_to_string(&moved).unwrap()).unwrap();
    parse_rho(&std::fs::read_to_string(&moved_rho).unwrap(), d.punctures()).unwrap();

    let before = ok(&["cover", &a, "--rho", &r, "--json"]);
    let after = ok(&["cover", &moved, "--rho", &moved_rho, "--json"]);
    let h = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["H"].clone();
    assert_eq!(h(&before), h(&after));
    assert!(ok(&["heegaard", &moved]).starts_with("H1: 0\n"));

    let v: serde_json::Value =
        serde_json::from_str(&ok(&["move", "braid", &a, "-w", "s1", "--rho", &r, "--json"])).unwrap();
    assert!(v["rho"].as_str().unwrap().starts_with("sheets: 3\n"));
    assert_eq!(
        q4d(&["move", "braid", &a, "-w", "s1", "--rho-out", &moved_rho]).code,
        EXIT_USAGE
    );
}
