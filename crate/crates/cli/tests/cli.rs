mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tvspace::random::random_space;
use tvspace::{Budget, Monad, Quantale};
use tvspace_cli::commands::{compute_workspace, Flags};
use tvspace_cli::{Item, Workspace};

#[test]
fn golden_transcripts() {
    for case in common::golden_cases() {
        let args: Vec<&str> = case.args.iter().map(String::as_str).collect();
        assert_eq!(common::transcript(&args), case.expected, "case {}", case.name);
    }
}

#[test]
fn out_flag_writes_the_printed_object() {
    let dir = std::env::temp_dir().join(format!("tvcat-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("e.tv");
    let out_s = out.display().to_string();
    let (text, code) = common::run(&["compute", "fixtures/ord.tv", "exponential", "C2", "C2", "--out", &out_s]);
    assert_eq!((text.as_str(), code), ("", 0));
    let written = std::fs::read_to_string(&out).unwrap();
    let (stdout, _) = common::run(&["compute", "fixtures/ord.tv", "exponential", "C2", "C2"]);
    assert_eq!(written, stdout);
    assert_eq!(common::run(&["validate", &out_s]).1, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn class_from_files() {
    let (text, code) = common::run(&["check", "fixtures/ord.tv", "V", "c-generated", "--class", "fixtures/quasi.tv"]);
    assert_eq!(code, 1, "{text}");
    assert!(text.starts_with("false, witness ("), "{text}");
    let (text, code) = common::run(&["compute", "fixtures/ord.tv", "coreflect", "C2", "--class", "fixtures/ord.tv"]);
    assert_eq!(code, 0, "{text}");
    let ws = Workspace::parse(&text, Budget::default()).unwrap();
    let ord =
        Workspace::parse(&std::fs::read_to_string(common::root().join("fixtures/ord.tv")).unwrap(), Budget::default())
            .unwrap();
    assert_eq!(ws.space("coreflect_C2").unwrap(), ord.space("C2").unwrap());
}

#[test]
fn quasi_constructions_round_trip() {
    let src = std::fs::read_to_string(common::root().join("fixtures/ord.tv")).unwrap();
    for op in ["associate", "discrete-quasi", "indiscrete-quasi"] {
        let mut ws = Workspace::parse(&src, Budget::default()).unwrap();
        let flags = Flags { class: Some("compact-hausdorff-upto:2".into()), ..Flags::default() };
        let out = compute_workspace(&mut ws, op, &["V".into()], &flags).unwrap();
        let printed = out.print().unwrap();
        assert_eq!(Workspace::parse(&printed, Budget::default()).unwrap(), out, "{op}");
        let name = format!("{op}_V");
        let back = compute_workspace(&mut out.clone(), "reflect-quasi", &[name], &Flags::default()).unwrap();
        assert!(back.items().iter().any(|(_, i)| matches!(i, Item::Space { .. })));
    }
}

#[test]
fn outputs_are_stable_across_runs() {
    let args = ["compute", "fixtures/metric.tv", "product", "Tri", "Ray"];
    let first = common::transcript(&args);
    for _ in 0..3 {
        assert_eq!(common::transcript(&args), first);
    }
}

fn quantales() -> Vec<(&'static str, Quantale)> {
    vec![
        ("bool2", Quantale::bool2()),
        ("chain 4", Quantale::chain(4).unwrap()),
        ("lukasiewicz-grid 3", Quantale::lukasiewicz_grid(3).unwrap()),
        ("cost-plus", Quantale::cost_plus()),
        ("cost-max", Quantale::cost_max()),
    ]
}

proptest! {
    #[test]
    fn parse_print_round_trip(seed in any::<u64>(), k in 0usize..5, n in 0usize..5, uf in any::<bool>()) {
        let (kind, q) = quantales().swap_remove(k);
        let monad = if uf { Monad::UltrafilterFinite } else { Monad::Identity };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_space(&mut rng, n, monad, &q, 0.3).unwrap();
        let mut ws = Workspace::parse(&format!("quantale Q {{ kind {kind} }}"), Budget::default()).unwrap();
        ws.insert("X", Item::Space { quantale: "Q".into(), space: x }).unwrap();
        let printed = ws.print().unwrap();
        let back = Workspace::parse(&printed, Budget::default()).unwrap();
        prop_assert_eq!(&back, &ws);
        prop_assert_eq!(back.print().unwrap(), printed);
    }
}
