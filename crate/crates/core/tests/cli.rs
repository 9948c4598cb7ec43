use std::path::PathBuf;
use std::process::Command;

use incmon::invariants::{self, EffectivityVerdict};
use incmon::kgroup::KElement;
use incmon::modengine::{self, homological};
use incmon::monomial::{self, MonomialTuple};
use incmon::Word;
use num_bigint::BigInt;
use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_incmon"));
    cmd.args(args).env_remove("INCMON_MAX_DEGREE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn text(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout.trim_end().to_string()
}

fn schema_root() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas/output.v1.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn validate(def: &str, instance: &Value) {
    let root = schema_root();
    let schema = serde_json::json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$defs": root["$defs"],
        "$ref": format!("#/$defs/{def}"),
    });
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{def}: {instance} fails schema: {errors:?}");
}

fn json(def: &str, args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    let v: Value = serde_json::from_str(out.stdout.trim()).expect("stdout is one JSON document");
    validate(def, &v);
    assert_eq!(v["schema_version"], 1);
    v
}

fn el(s: &str) -> KElement {
    incmon::cli::expr::parse_element(s).unwrap()
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn big(v: &Value) -> BigInt {
    match v {
        Value::Number(n) => BigInt::from(n.as_i64().unwrap()),
        Value::String(s) => s.parse().unwrap(),
        _ => panic!("not an integer: {v}"),
    }
}

fn usizes(v: &Value) -> Vec<usize> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as usize)
        .collect()
}

fn paren_list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn comma_list(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[test]
fn documented_examples() {
    assert_eq!(
        text(&["series", "g", "aba"]),
        "(1)a(b)a(1) + (1)a(b^2/(1-b)) + (b^2/(1-b))a(1) + (b^3/(1-b)^2)"
    );
    assert_eq!(text(&["pair", "aba", "a*b^2"]), "1");
    assert_eq!(
        text(&["effective", "a - 1", "--bound", "4"]),
        "NOT effective; witness 1 (coefficient -1)"
    );
    assert_eq!(text(&["kgroup", "eval", "2*aba - b^3 + 1"]), "2*aba - b^3 + 1");
    assert_eq!(text(&["kgroup", "eval", "(a+b)^2"]), "a^2 + ab + ba + b^2");
}

#[test]
fn exit_codes() {
    let syntax = run(&["kgroup", "eval", "a*)"]);
    assert_eq!(syntax.code, 2);
    assert!(syntax.stderr.contains("offset 2"), "{}", syntax.stderr);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["kgroup", "frobnicate", "a"]).code, 2);
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["mult", "a", "c"]).code, 2);
    assert_eq!(run(&["monomial", "to-tuple", "1,x"]).code, 2);
    assert_eq!(run(&["module", "dims", "std:ab", "--deg", "x"]).code, 2);

    assert_eq!(run(&["monomial", "to-exponents", "3,2"]).code, 1);
    assert_eq!(run(&["module", "dims", "what:ever", "--deg", "3"]).code, 1);
    assert_eq!(
        run(&["module", "saturation", "std:ab", "--deg", "4", "--n", "0"]).code,
        1
    );
    assert_eq!(
        run(&["monomial", "member", "--gens", "1,2", "--tuple", "1,2,3"]).code,
        1
    );
    let failed = run(&["module", "dims", "std:ab", "--deg", "40"]);
    assert_eq!(failed.code, 1);
    assert!(failed.stdout.is_empty());
    assert!(!failed.stderr.is_empty());
}

#[test]
fn degree_cap_from_environment() {
    assert_eq!(run(&["module", "dims", "std:a", "--deg", "16"]).code, 0);
    assert_eq!(run(&["module", "dims", "std:a", "--deg", "17"]).code, 1);
    let capped = [("INCMON_MAX_DEGREE", "5")];
    assert_eq!(
        run_with_env(&["module", "dims", "std:a", "--deg", "5"], &capped).code,
        0
    );
    assert_eq!(
        run_with_env(&["module", "dims", "std:a", "--deg", "6"], &capped).code,
        1
    );
    let raised = [("INCMON_MAX_DEGREE", "20")];
    assert_eq!(
        run_with_env(&["module", "dims", "std:a", "--deg", "18"], &raised).code,
        0
    );
}

#[test]
fn kgroup_operators_match_library() {
    type Op = fn(&KElement) -> KElement;
    let ops: [(&str, Op); 9] = [
        ("eval", |x| x.clone()),
        ("psi", KElement::psi),
        ("gamma", KElement::gamma),
        ("xi", KElement::xi),
        ("sigma", KElement::sigma),
        ("dual", KElement::dual),
        ("transpose", KElement::transpose),
        ("pi", KElement::pi),
        ("kappa", KElement::kappa),
    ];
    for input in ["aba", "2*ab - b^3 + 1", "(a-1)*(b+2)", "-bab"] {
        for (name, f) in ops {
            let expected = f(&el(input));
            let t = text(&["kgroup", name, input]);
            assert_eq!(t, expected.to_string());
            let v = json("kgroup", &["kgroup", name, input]);
            assert_eq!(v["op"], name);
            assert_eq!(v["text"], t);
            let from_json = KElement::from_terms(
                v["element"]
                    .as_object()
                    .unwrap()
                    .iter()
                    .map(|(w, c)| (big(c), if w == "1" { Word::empty() } else { word(w) })),
            );
            assert_eq!(from_json, expected);
        }
    }
}

#[test]
fn series_match_library() {
    for input in ["aba", "a - 1", "2*b^2 + ab"] {
        for (kind, smooth) in [("g", false), ("g", true), ("f", false), ("f", true)] {
            let x = el(input);
            let expected = match (kind, smooth) {
                ("g", false) => invariants::gser(&x),
                ("g", true) => invariants::gser_smooth(&x),
                ("f", false) => invariants::fser(&x),
                _ => invariants::fser_smooth(&x),
            };
            let mut args = vec!["series", kind, input, "--expand", "4"];
            if smooth {
                args.push("--smooth");
            }
            let t = text(&args);
            let mut lines = t.lines();
            assert_eq!(lines.next().unwrap(), expected.to_string());
            let v = json("series_output", &args);
            assert_eq!(v["text"], expected.to_string());
            assert_eq!(v["smooth"], smooth);
            let expansion = v["expansion"].as_array().unwrap();
            let text_rows: Vec<&str> = lines.collect();
            assert_eq!(text_rows.len(), expansion.len());
            for (row, entry) in text_rows.iter().zip(expansion) {
                let w = entry["word"].as_str().unwrap();
                let c = big(&entry["coefficient"]);
                assert_eq!(*row, format!("{w} {c}"));
                let wd = if w == "1" { Word::empty() } else { word(w) };
                assert_eq!(expected.word_coefficient(&wd), c);
            }
        }
    }
}

#[test]
fn scalar_invariants_match_library() {
    for input in ["aba", "ab - 1", "b^3"] {
        let x = el(input);
        let h = invariants::hilbert(&x, false);
        let t = text(&["hilbert", input]);
        assert_eq!(
            t,
            format!("{}; pole order {}", h.series.to_string_in('t'), h.pole_order)
        );
        let v = json("hilbert", &["hilbert", input]);
        assert_eq!(v["pole_order"], h.pole_order);
        assert_eq!(v["text"], h.series.to_string_in('t'));

        let level = invariants::level_upper(&x);
        let v = json("level", &["level", input]);
        match level {
            Some(l) => {
                assert_eq!(text(&["level", input]), l.to_string());
                assert_eq!(v["level"], l);
            }
            None => assert!(v["level"].is_null()),
        }

        for lam in ["ab", "ba", "bba"] {
            let m = invariants::mult(&x, &word(lam), false);
            assert_eq!(text(&["mult", input, lam]), m.to_string());
            assert_eq!(big(&json("mult", &["mult", input, lam])["multiplicity"]), m);
        }

        for right in ["a*b^2", "ba - b", "1"] {
            for smooth in [false, true] {
                let p = invariants::pair(&x, &el(right), smooth);
                let mut args = vec!["pair", input, right];
                if smooth {
                    args.push("--smooth");
                }
                assert_eq!(text(&args), p.to_string());
                assert_eq!(big(&json("pair", &args)["pairing"]), p);
            }
        }
        for lam in ["b", "ab"] {
            let p = invariants::pair_left(&word(lam), &x, false);
            let args = ["pair", input, "--left-word", lam];
            assert_eq!(text(&args), p.to_string());
            assert_eq!(big(&json("pair", &args)["pairing"]), p);
        }
    }
}

#[test]
fn effectivity_matches_library() {
    for (input, bound, smooth) in [
        ("a - 1", 6, false),
        ("a - 1", 8, true),
        ("a + b", 4, false),
        ("b - 2", 3, false),
    ] {
        let verdict = invariants::effective(&el(input), bound, smooth);
        let bs = bound.to_string();
        let mut args = vec!["effective", input, "--bound", &bs];
        if smooth {
            args.push("--smooth");
        }
        let t = text(&args);
        let v = json("effective", &args);
        match verdict {
            EffectivityVerdict::EffectiveUpTo(l) => {
                assert_eq!(t, format!("effective up to length {l}"));
                assert_eq!(v["verdict"], "effective_up_to");
                assert_eq!(v["bound"], l);
            }
            EffectivityVerdict::NotEffective { witness, coefficient } => {
                let w = if witness.is_empty() {
                    "1".to_string()
                } else {
                    witness.to_string()
                };
                assert_eq!(t, format!("NOT effective; witness {w} (coefficient {coefficient})"));
                assert_eq!(v["verdict"], "not_effective");
                assert_eq!(v["witness"], w);
                assert_eq!(big(&v["coefficient"]), coefficient);
            }
        }
    }
}

#[test]
fn module_commands_match_library() {
    let d = 7;
    let ds = d.to_string();
    for spec in ["std:ab", "prin:2", "simple:3", "inj:ba", "trivial"] {
        let m = modengine::from_spec(spec, d).unwrap();

        let t = text(&["module", "dims", spec, "--deg", &ds]);
        assert_eq!(t, paren_list(m.dims()));
        let v = json("module_dims", &["module", "dims", spec, "--deg", &ds]);
        assert_eq!(usizes(&v["dims"]), m.dims());
        assert_eq!(v["D"], d);

        let v = json("module_build", &["module", "build", spec, "--deg", &ds]);
        assert_eq!(modengine::from_json(&v["module"]).unwrap(), m);
        let t = text(&["module", "build", spec, "--deg", &ds]);
        let mut lines = t.lines();
        assert_eq!(lines.next().unwrap(), format!("D={d} dims={}", paren_list(m.dims())));
        let body: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(body, v["module"]);

        let t = text(&["module", "tfunctor", spec, "--deg", &ds]);
        assert_eq!(t, paren_list(&homological::t_functor(&m)));
        let v = json("module_tfunctor", &["module", "tfunctor", spec, "--deg", &ds]);
        assert_eq!(usizes(&v["dims"]), homological::t_functor(&m));

        let xi = homological::xi_truncated(&m);
        let t = text(&["module", "dims", spec, "--deg", &ds, "--op", "xi"]);
        assert_eq!(
            t,
            format!(
                "{}; reliable through degree {}",
                paren_list(&xi.dims),
                xi.reliable_degree
            )
        );
        let v = json("module_xi", &["module", "dims", spec, "--deg", &ds, "--op", "xi"]);
        assert_eq!(usizes(&v["dims"]), xi.dims);
        assert_eq!(v["reliable_degree"], xi.reliable_degree);

        let tau = homological::canonical_grading_pieces(&m, 1).unwrap();
        let v = json(
            "module_tau",
            &["module", "dims", spec, "--deg", &ds, "--op", "tau", "1"],
        );
        assert_eq!(v["total"], tau.total);
        assert_eq!(usizes(&v["pieces"]), tau.pieces);
        assert_eq!(
            text(&["module", "dims", spec, "--deg", &ds, "--op", "tau", "1"]),
            format!(
                "total {}; pieces {}; reliable through degree {}",
                tau.total,
                paren_list(&tau.pieces),
                tau.reliable_degree
            )
        );

        let betti = homological::koszul_betti(&m);
        let v = json("module_betti", &["module", "betti", spec, "--deg", &ds]);
        let entries = v["entries"].as_array().unwrap();
        assert_eq!(entries.len(), betti.entries.len());
        for e in entries {
            let (i, j) = (e["i"].as_u64().unwrap() as usize, e["j"].as_u64().unwrap() as usize);
            assert_eq!(e["value"], betti.get(i, j));
        }
        let t = text(&["module", "betti", spec, "--deg", &ds]);
        for line in t.lines().filter(|l| !l.starts_with("reliable")) {
            let (i, row) = line.split_once(": ").unwrap();
            let i: usize = i.parse().unwrap();
            for (j, value) in row.split(' ').enumerate() {
                assert_eq!(value.parse::<usize>().unwrap(), betti.get(i, j));
            }
        }

        let v = json("module_verify", &["module", "verify", spec, "--deg", &ds]);
        assert!(v["violations"].as_array().unwrap().is_empty());
        assert_eq!(text(&["module", "verify", spec, "--deg", &ds]), "ok");
    }
}

#[test]
fn module_operators_match_library() {
    let d = 6;
    let ds = d.to_string();
    let m = modengine::from_spec("std:ab", d).unwrap();
    let other = modengine::from_spec("prin:1", d).unwrap();
    let cases: Vec<(Vec<&str>, modengine::TruncatedModule)> = vec![
        (vec!["--op", "shift"], modengine::shift(&m).unwrap()),
        (vec!["--op", "smooth-shift"], modengine::smooth_shift(&m).unwrap()),
        (vec!["--op", "transpose"], modengine::transpose(&m)),
        (vec!["--op", "coind"], modengine::coinduction(&m)),
        (vec!["--op", "ind"], modengine::induction(&m)),
        (vec!["--op", "positive"], m.positive_part()),
        (vec!["--op", "concat", "prin:1"], modengine::concat(&m, &other).unwrap()),
        (
            vec!["--op", "sum", "prin:1"],
            modengine::direct_sum(&m, &other).unwrap(),
        ),
    ];
    for (op, expected) in cases {
        let mut args = vec!["module", "build", "std:ab", "--deg", &ds];
        args.extend(op.iter().copied());
        let v = json("module_build", &args);
        assert_eq!(modengine::from_json(&v["module"]).unwrap(), expected, "{op:?}");
        args[1] = "dims";
        assert_eq!(usizes(&json("module_dims", &args)["dims"]), expected.dims());
    }
}

#[test]
fn module_hom_and_saturation_match_library() {
    let d = 7;
    let ds = d.to_string();
    for (src, tgt) in [
        ("std:ab", "inj:ab"),
        ("std:b", "inj:ba"),
        ("prin:2", "trivial"),
        ("simple:2", "std:bb"),
    ] {
        let h = homological::hom_dim(
            &modengine::from_spec(src, d).unwrap(),
            &modengine::from_spec(tgt, d).unwrap(),
        )
        .unwrap();
        let v = json("module_hom", &["module", "hom", src, tgt, "--deg", &ds]);
        assert_eq!(v["dim"], h.dim);
        assert_eq!(v["reliable"], h.reliable);
        let t = text(&["module", "hom", src, tgt, "--deg", &ds]);
        assert!(t.starts_with(&h.dim.to_string()), "{t}");
        assert_eq!(t.contains("(reliable)"), h.reliable);
    }
    for (spec, n) in [("std:ab", 2), ("std:ba", 3), ("prin:2", 4)] {
        let r = homological::saturation_rank(&modengine::from_spec(spec, d).unwrap(), n).unwrap();
        let ns = n.to_string();
        let args = ["module", "saturation", spec, "--deg", &ds, "--n", &ns];
        assert_eq!(text(&args), r.to_string());
        assert_eq!(json("module_saturation", &args)["rank"], r);
    }
}

#[test]
fn module_spec_from_file() {
    let m = modengine::from_spec("std:aba", 6).unwrap();
    let path = std::env::temp_dir().join(format!("incmon-cli-{}.json", std::process::id()));
    std::fs::write(&path, modengine::to_json(&m).to_string()).unwrap();
    let arg = format!("@{}", path.display());
    let v = json("module_dims", &["module", "dims", &arg, "--deg", "6"]);
    assert_eq!(usizes(&v["dims"]), m.dims());
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn monomial_commands_match_library() {
    for tuple in [vec![2u64, 3, 5], vec![1], vec![4, 9, 10, 30]] {
        let t = MonomialTuple::new(tuple.clone()).unwrap();
        let exps = monomial::tuple_to_exponents(&t);
        let arg = comma_list(&tuple);
        assert_eq!(text(&["monomial", "to-exponents", &arg]), comma_list(&exps.0));
        let v = json("monomial_exponents", &["monomial", "to-exponents", &arg]);
        assert_eq!(v["exponents"], serde_json::to_value(&exps).unwrap());

        let back = comma_list(&exps.0);
        assert_eq!(text(&["monomial", "to-tuple", &back]), arg);
        let v = json("monomial_tuple", &["monomial", "to-tuple", &back]);
        assert_eq!(v["tuple"], serde_json::to_value(&tuple).unwrap());
    }

    let gens: Vec<MonomialTuple> = vec![
        MonomialTuple::new(vec![1, 3]).unwrap(),
        MonomialTuple::new(vec![2, 4]).unwrap(),
    ];
    for probe in ["1,3", "2,5", "1,2", "3,4", "4,9"] {
        let t: Vec<u64> = probe.split(',').map(|x| x.parse().unwrap()).collect();
        let expected = monomial::submodule_member(&gens, &MonomialTuple::new(t).unwrap()).unwrap();
        let args = ["monomial", "member", "--gens", "1,3;2,4", "--tuple", probe];
        assert_eq!(text(&args), expected.to_string());
        assert_eq!(json("monomial_member", &args)["member"], expected);
    }

    let terms = vec![
        ("1".parse().unwrap(), MonomialTuple::new(vec![1, 5]).unwrap()),
        ("-2".parse().unwrap(), MonomialTuple::new(vec![3, 4]).unwrap()),
        ("1/2".parse().unwrap(), MonomialTuple::new(vec![2, 5]).unwrap()),
    ];
    let initial = monomial::initial_tuple(&terms).unwrap();
    let args = ["monomial", "initial", "1:1,5;-2:3,4;1/2:2,5"];
    assert_eq!(text(&args), comma_list(initial.entries()));
    assert_eq!(
        json("monomial_initial", &args)["initial"],
        serde_json::to_value(initial.entries()).unwrap()
    );

    let args = ["monomial", "chain", "2,3|1,3|1,3;1,2|1,3;1,2"];
    let sets: Vec<Vec<MonomialTuple>> = [
        vec![vec![2, 3]],
        vec![vec![1, 3]],
        vec![vec![1, 3], vec![1, 2]],
        vec![vec![1, 3], vec![1, 2]],
    ]
    .into_iter()
    .map(|s| s.into_iter().map(|t| MonomialTuple::new(t).unwrap()).collect())
    .collect();
    let at = monomial::chain_stabilizes(&sets).unwrap();
    let v = json("monomial_chain", &args);
    match at {
        Some(k) => {
            assert_eq!(text(&args), k.to_string());
            assert_eq!(v["stabilizes_at"], k);
        }
        None => assert!(v["stabilizes_at"].is_null()),
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let root = schema_root();
    let schema = serde_json::json!({
        "$defs": root["$defs"],
        "$ref": "#/$defs/pair",
    });
    let validator = jsonschema::validator_for(&schema).unwrap();
    assert!(validator.is_valid(&serde_json::json!({"schema_version": 1, "pairing": 3})));
    assert!(validator.is_valid(&serde_json::json!({"schema_version": 1, "pairing": "-123456789012345678901234567890"})));
    assert!(!validator.is_valid(&serde_json::json!({"schema_version": 2, "pairing": 3})));
    assert!(!validator.is_valid(&serde_json::json!({"schema_version": 1})));
    assert!(!validator.is_valid(&serde_json::json!({"schema_version": 1, "pairing": 1.5})));
}
