//! End-to-end acceptance suite, one line per criterion.
//!
//! Runs sequentially without the libtest harness so every verdict prints.
//! Criteria 6 and 7 take minutes. Set `HORSESHOE_STRETCH=1` to also run the
//! second monodromy loop.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use horseshoe::henon::{Mode, Param};
use horseshoe::hyp::{sweep_params, verify_quasi_hyperbolic, Status, VerifyConfig};
use horseshoe::interval::CInterval;
use horseshoe::monodromy::{continue_partition, gamma_empty, identify_swapped_blocks, ParamLoop};
use horseshoe::periodic::{count_real, crosscheck_pruning, CrossCheckVerdict};
use horseshoe::shift::{
    apply, apply_periodic, compare_to_published, count_fixed_enumerate, count_fixed_transfer,
    fix_to_sft, hedlund_orbit, is_fixed, Automorphism, BlockSwap, Column, HedlundVerdict,
    PeriodicSeq, Sft, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MONODROMY_BUDGET: usize = 1 << 26;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn real(a: &str, c: &str) -> Param {
    Param::real(a.parse().unwrap(), c.parse().unwrap()).unwrap()
}

fn bits_to_text(b: &[u8]) -> String {
    b.iter().map(|x| char::from(b'0' + x)).collect()
}

fn all_words(len: usize) -> impl Iterator<Item = Word> {
    (0u32..1 << len).map(move |m| Word::new((0..len).map(|j| ((m >> j) & 1) as u8).collect(), None).unwrap())
}

fn sft_table() -> Verdict {
    let t = Instant::now();
    let cells = compare_to_published().unwrap();
    let elapsed = t.elapsed();
    let bad: Vec<String> = cells
        .iter()
        .filter(|c| c.column != Column::EMP && !c.pass())
        .map(|c| format!("{} n={}: {} != {}", c.column.name(), c.n, c.computed, c.expected))
        .collect();
    let counted = cells.iter().filter(|c| c.column != Column::EMP).count();
    verdict(
        bad.is_empty() && counted == 25 && elapsed < Duration::from_secs(1),
        format!("{counted} cells (DN and four pruned columns), {:.3}s {}", elapsed.as_secs_f64(), bad.join("; ")),
    )
}

fn random_sft(rng: &mut ChaCha8Rng) -> Sft {
    let k = rng.gen_range(1..=4);
    let words: Vec<Word> = (0..k)
        .map(|_| {
            let len = rng.gen_range(2..=7);
            Word::new((0..len).map(|_| rng.gen_range(0..2)).collect(), None).unwrap()
        })
        .collect();
    Sft::new(&words)
}

fn oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sfts: Vec<Sft> = [Column::Lp, Column::Lq, Column::Lr, Column::Ls]
        .iter()
        .map(|c| c.sft().unwrap())
        .collect();
    sfts.extend((0..50).map(|_| random_sft(&mut rng)));
    let mut mismatches = Vec::new();
    for (i, s) in sfts.iter().enumerate() {
        for n in 1..=12 {
            let (t, e) = (count_fixed_transfer(s, n).unwrap(), count_fixed_enumerate(s, n).unwrap());
            if t != e {
                mismatches.push(format!("sft {i} n={n}: {t} vs {e}"));
            }
        }
    }
    verdict(
        mismatches.is_empty(),
        format!("{} subshifts x n=1..12 {}", sfts.len(), mismatches.join("; ")),
    )
}

// Involution and shift commutation of `a` on every window of each length up to `max_len`.
fn window_checks(a: &Automorphism, (rl, rr): (usize, usize), max_len: usize) -> Option<String> {
    let span = rl + rr;
    for len in span + 1..=max_len {
        for w in all_words(len) {
            let once = apply(a, &w).unwrap();
            if len > 2 * span {
                let twice = apply(a, &once).unwrap();
                if twice.bits() != &w.bits()[2 * rl..len - 2 * rr] {
                    return Some(format!("not an involution on {w}"));
                }
            }
            if len > span + 1 {
                let tail = Word::new(w.bits()[1..].to_vec(), None).unwrap();
                if apply(a, &tail).unwrap().bits() != &once.bits()[1..] {
                    return Some(format!("does not commute with the shift on {w}"));
                }
            }
        }
    }
    None
}

fn automorphisms() -> Verdict {
    let mut notes = Vec::new();
    let flip = gamma_empty();
    let square = flip.clone().then(flip);
    if let Some(e) = all_words(12).find(|w| apply(&square, w).unwrap() != *w) {
        notes.push(format!("flip squared moves {e}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for col in [Column::Lp, Column::Lq, Column::Lr, Column::Ls] {
        let f = col.forbidden().unwrap();
        let swap = BlockSwap::from_words(f[0], f[1]).unwrap();
        let l = swap.window();
        let a = Automorphism::swap(swap.clone());
        if let Some(e) = window_checks(&a, swap.radius(), 2 * l + 2) {
            notes.push(format!("{}: {e}", col.name()));
        }
        let sft = fix_to_sft(&swap).unwrap();
        for _ in 0..10_000 {
            let period = rng.gen_range(1..=24);
            let x = PeriodicSeq::new((0..period).map(|_| rng.gen_range(0..2)).collect()).unwrap();
            if is_fixed(&a, &x) != sft.admits_periodic(x.word()) {
                notes.push(format!("{}: fixed/SFT disagree on ({})", col.name(), bits_to_text(x.word())));
                break;
            }
            if apply_periodic(&a, &apply_periodic(&a, &x)) != x {
                notes.push(format!("{}: not an involution on ({})", col.name(), bits_to_text(x.word())));
                break;
            }
        }
    }
    verdict(notes.is_empty(), format!("flip, 4 swaps, 4x10^4 periodic samples {}", notes.join("; ")))
}

fn hedlund() -> Verdict {
    let t = Instant::now();
    let v = hedlund_orbit(64);
    let elapsed = t.elapsed();
    verdict(
        v == HedlundVerdict::AllDistinct { checked: 64 } && elapsed < Duration::from_secs(1),
        format!("{v:?} in {:.3}s", elapsed.as_secs_f64()),
    )
}

fn real_hyperbolicity() -> Verdict {
    let cfg = VerifyConfig::default();
    let mut pass = true;
    let mut notes = Vec::new();
    for (c, limit) in [("-10", 600.0), ("-5.4", 7200.0)] {
        let r = verify_quasi_hyperbolic(&real("1", c), &cfg);
        pass &= r.status == Status::Certified && r.wall_seconds <= limit;
        notes.push(format!(
            "(1,{c}) {:?} base depth {} in {:.2}s",
            r.status, r.base_depth, r.wall_seconds
        ));
    }
    verdict(pass, notes.join(", "))
}

fn complex_hyperbolicity() -> Verdict {
    let p = Param::point(1.0, -10.0, Mode::Complex).unwrap();
    let point = verify_quasi_hyperbolic(&p, &VerifyConfig::default());
    let region = Param::complex(
        CInterval::ONE,
        CInterval::new("[-10.25, -9.75]".parse().unwrap(), "[0.25, 0.75]".parse().unwrap()),
    )
    .unwrap();
    let cfg = VerifyConfig {
        max_base_depth: 6,
        ..VerifyConfig::default()
    };
    let t = Instant::now();
    let sweep = sweep_params(&[region], 4, &cfg);
    let pass = point.status == Status::Certified
        && point.wall_seconds <= 8.0 * 3600.0
        && sweep.unknown.is_empty()
        && !sweep.certified.is_empty();
    verdict(
        pass,
        format!(
            "point {:?} depth {} in {:.1}s; rectangle {} boxes certified, {} unknown in {:.1}s",
            point.status,
            point.base_depth,
            point.wall_seconds,
            sweep.certified.len(),
            sweep.unknown.len(),
            t.elapsed().as_secs_f64()
        ),
    )
}

fn swap_words(path: &str, n: usize, depth: u8) -> Result<BTreeSet<String>, String> {
    let lp = ParamLoop::from_file(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(path))
        .map_err(|e| e.to_string())?;
    let track = continue_partition(&lp, n, depth, MONODROMY_BUDGET).map_err(|e| e.to_string())?;
    let swaps = identify_swapped_blocks(&track, 3, 0, MONODROMY_BUDGET).map_err(|e| e.to_string())?;
    Ok(swaps
        .pairs
        .iter()
        .flat_map(|(u, v)| [u.undotted().to_string(), v.undotted().to_string()])
        .collect())
}

fn monodromy() -> Verdict {
    let t = Instant::now();
    let want: BTreeSet<String> = ["0010", "0110"].map(String::from).into();
    match swap_words("data/gamma_s.toml", 256, 8) {
        Ok(got) => verdict(
            got == want,
            format!("gamma_s at n=256 depth 8: {got:?} in {:.1}s", t.elapsed().as_secs_f64()),
        ),
        Err(e) => verdict(false, format!("gamma_s at n=256 depth 8: {e}")),
    }
}

fn monodromy_stretch() -> Option<Verdict> {
    std::env::var_os("HORSESHOE_STRETCH")?;
    let want: BTreeSet<String> = ["10100", "11100"].map(String::from).into();
    let mut notes = Vec::new();
    for depth in [8, 9] {
        let t = Instant::now();
        match swap_words("data/gamma_q.toml", 256, depth) {
            Ok(got) => {
                notes.push(format!("depth {depth}: {got:?} in {:.1}s", t.elapsed().as_secs_f64()));
                return Some(verdict(got == want, notes.join("; ")));
            }
            Err(e) => notes.push(format!("depth {depth}: {e}")),
        }
    }
    Some(verdict(false, notes.join("; ")))
}

fn periodic_counts() -> Verdict {
    let p = real("1", "-5.4");
    let want = Column::Lp.published();
    let mut got = Vec::new();
    let mut pass = true;
    for n in 3..=7 {
        let t = Instant::now();
        let r = count_real(&p, n).unwrap();
        pass &= r.exact && r.lower_real == want[n - 3] && t.elapsed() <= Duration::from_secs(600);
        got.push(if r.exact {
            r.lower_real.to_string()
        } else {
            format!("[{}, {}]", r.lower_real, r.upper_real)
        });
    }
    verdict(pass, format!("(1,-5.4) n=3..7: {}", got.join(",")))
}

fn pruning() -> Verdict {
    let mut pass = true;
    let mut notes = Vec::new();
    for (a, c, col) in [("1", "-5.4", Column::Lp), ("0.25", "-2.25", Column::Lq)] {
        let (v, rows) = crosscheck_pruning(&real(a, c), &col.sft().unwrap(), 3..=7).unwrap();
        pass &= v == CrossCheckVerdict::Pass;
        let counts: Vec<String> = rows.iter().map(|r| r.symbolic.to_string()).collect();
        notes.push(format!("({a},{c}) vs {}: {v:?} [{}]", col.name(), counts.join(",")));
    }
    verdict(pass, notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("sft table", sft_table),
        ("transfer matrix vs enumeration", oracle_equivalence),
        ("automorphism properties", automorphisms),
        ("infinite-order orbit", hedlund),
        ("real quasi-hyperbolicity", real_hyperbolicity),
        ("complex quasi-hyperbolicity", complex_hyperbolicity),
        ("monodromy swap", monodromy),
        ("periodic-orbit counts", periodic_counts),
        ("pruning cross-check", pruning),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if filter.as_ref().is_some_and(|f| !name.contains(f.as_str())) {
            continue;
        }
        let v = run();
        println!(
            "criterion {}: {} {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail.trim_end()
        );
        failed += usize::from(!v.pass);
    }
    match monodromy_stretch() {
        Some(v) => println!(
            "stretch: {} gamma_q swap: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        ),
        None => println!("stretch: SKIP gamma_q swap (set HORSESHOE_STRETCH=1)"),
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
