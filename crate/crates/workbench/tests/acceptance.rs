//! Acceptance run: `hofib run all --seed 0 --json` twice, then one PASS/FAIL
//! line per acceptance criterion, judged from the report.

use std::process::{Command, ExitCode};

use serde_json::Value;

struct Checks<'a>(Vec<&'a Value>);

impl<'a> Checks<'a> {
    fn named(&self, name: &str) -> Vec<&'a Value> {
        self.0.iter().copied().filter(|c| c["name"] == name).collect()
    }

    fn passed(c: &Value) -> bool {
        c["status"] == "pass"
    }

    /// At least `min` checks called `name`, all passing.
    fn all_pass(&self, name: &str, min: usize) -> Result<usize, String> {
        let cs = self.named(name);
        if cs.len() < min {
            return Err(format!("{name}: {} checks, want at least {min}", cs.len()));
        }
        match cs.iter().find(|c| !Self::passed(c)) {
            Some(c) => Err(format!("{name} fails on {}: {}", c["subject"], c["first_failure"])),
            None => Ok(cs.len()),
        }
    }

    fn subjects(&self, name: &str) -> Vec<String> {
        self.named(name).iter().map(|c| c["subject"].as_str().unwrap_or_default().to_string()).collect()
    }
}

fn run_all() -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hofib")).args(["run", "all", "--seed", "0", "--json"]).output().expect("hofib runs");
    if !out.stderr.is_empty() {
        eprintln!("{}", String::from_utf8_lossy(&out.stderr));
    }
    (out.stdout, out.status.code())
}

fn criteria(first: &[u8], second: &[u8], code: Option<i32>) -> Vec<(&'static str, Result<String, String>)> {
    let report: Value = match serde_json::from_slice(first) {
        Ok(v) => v,
        Err(e) => return vec![("report parses", Err(e.to_string()))],
    };
    let all: Vec<&Value> = report["checks"].as_array().map(|a| a.iter().collect()).unwrap_or_default();
    let k = Checks(all);
    let n_bicat = k.named("bicategory-axioms").len();
    let n_xmod = k.named("crossed-module-axioms").len();
    let n_pairs = k.named("comma-projections").len();

    let c1 = || -> Result<String, String> {
        let n = k.all_pass("comma-axioms", n_pairs.max(1))?;
        k.all_pass("comma-projections", 1)?;
        Ok(format!("{n} comma pairs"))
    };
    let c2 = || k.all_pass("pullback-lemma", 5).map(|n| format!("{n} instances"));
    let c3 = || k.all_pass("hom-isomorphism", n_bicat.max(1)).map(|n| format!("{n} bicategories, every object pair"));
    let c4 = || -> Result<String, String> {
        let n = k.all_pass("graph-adjunction", n_bicat.max(1))?;
        k.all_pass("jr-bijection", n)?;
        k.all_pass("nerve-projection", n)?;
        Ok(format!("{n} bicategories"))
    };
    let c5 = || k.all_pass("grothendieck-nerve", n_bicat.max(1)).map(|n| format!("{n} bicategories at N=3"));
    let c6 = || -> Result<String, String> {
        let n = k.all_pass("nerve-functoriality", 3)?;
        k.all_pass("nerve-identity", n_bicat.max(1))?;
        Ok(format!("{n} composable pairs"))
    };
    let c7 = || -> Result<String, String> {
        let n = k.all_pass("simplicial-identities", 4 * n_bicat.max(1))?;
        let d = k.all_pass("discrete-nerve-oracle", 1)?;
        Ok(format!("{n} nerves at N=4, {d} discrete oracles"))
    };
    let c8 = || -> Result<String, String> {
        k.all_pass("crossed-module-axioms", 1)?;
        k.all_pass("beta-roundtrip", 4).map(|n| format!("{n} crossed modules"))
    };
    let c9 = || -> Result<String, String> {
        let n = k.all_pass("xmod-nerve-comparison", n_xmod.max(1))?;
        k.all_pass("xmod-nerve-kan", n_xmod.max(1))?;
        Ok(format!("{n} crossed modules"))
    };
    let c10 = || k.all_pass("fibration-comparison", 3).map(|n| format!("{n} cospans"));
    let c11 = || -> Result<String, String> {
        let n = k.all_pass("mayer-vietoris", 5)?;
        let s = k.subjects("mayer-vietoris");
        for want in ["example-i", "example-ii"] {
            if !s.iter().any(|x| x == want) {
                return Err(format!("{want} missing"));
            }
        }
        Ok(format!("{n} cospans"))
    };
    let c12 = || -> Result<String, String> {
        let n = k.all_pass("fibre-equals-comma", 3)?;
        k.all_pass("regularity", 1)?;
        Ok(format!("{n} pairs"))
    };
    let c13 = || k.all_pass("loop-groupoid", n_xmod.max(1)).map(|n| format!("{n} crossed modules"));
    let c14 = || -> Result<String, String> {
        if code != Some(0) {
            return Err(format!("exit status {code:?}"));
        }
        if first != second {
            return Err("two runs differ".into());
        }
        Ok(format!("{} bytes, identical", first.len()))
    };
    vec![
        ("comma axioms", c1()),
        ("pullback lemma", c2()),
        ("comma of objects is the hom-category", c3()),
        ("graph adjunction", c4()),
        ("Grothendieck nerve coherence", c5()),
        ("nerve functoriality", c6()),
        ("geometric nerves", c7()),
        ("crossed modules and β", c8()),
        ("cocycle nerve comparison and Kan", c9()),
        ("fibration comparison", c10()),
        ("Mayer–Vietoris exactness", c11()),
        ("monoidal fibre and regularity", c12()),
        ("endomorphism groupoid", c13()),
        ("deterministic report", c14()),
    ]
}

fn main() -> ExitCode {
    let (first, code) = run_all();
    let (second, _) = run_all();
    let mut ok = true;
    for (i, (name, r)) in criteria(&first, &second, code).into_iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail})", i + 1),
            Err(why) => {
                ok = false;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
