//! Acceptance criteria 1 to 10. Runs without the libtest harness so that
//! every criterion prints exactly one PASS or FAIL line.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use endoperm_core::block_analysis::{
    infer_w, is_trivial_by_signs, restrict_cap, restrict_w, BlockDescriptor,
};
use endoperm_core::brauer_tree::{
    planar_isomorphic, similar, star, type_functions, BrauerTree, ValidTree,
};
use endoperm_core::cyclic_kd::{
    cap, cap_of_endo_permutation, is_endo_permutation, relative_heller, ModuleSum,
};
use endoperm_core::dade::{dade_add, lift_character, psi, psi_inverse, w_module, DadeElement};
use endoperm_core::descriptor::{emit_descriptor, parse_descriptor};
use endoperm_core::{is_prime, oracle, Error, GroupSpec, OracleConfig, Sign};

/// Counts cases and keeps the failures.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records `Err` from the library as a failure.
    fn ok<T>(&mut self, r: endoperm_core::Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self) -> Result<String, String> {
        match self.failures.first() {
            None => Ok(format!("{} cases", self.cases)),
            Some(first) => Err(format!(
                "{} of {} cases failed, first: {first}, last: {}",
                self.failures.len(),
                self.cases,
                self.failures.last().unwrap()
            )),
        }
    }
}

fn group(p: u64, ell: u32) -> GroupSpec {
    GroupSpec::new(p, ell).unwrap()
}

fn j(g: &GroupSpec, n: impl Into<BigUint>) -> ModuleSum {
    ModuleSum::indecomposable(g.clone(), n).unwrap()
}

fn cfg() -> OracleConfig {
    OracleConfig::default()
}

fn dade_group_law() -> Result<String, String> {
    let mut t = Tally::default();
    for (p, ell) in [(3, 1), (3, 2), (5, 1)] {
        let g = group(p, ell);
        for a in DadeElement::all(&g) {
            for b in DadeElement::all(&g) {
                let sum = dade_add(&a, &b).unwrap();
                let what = || format!("C_{p}^{ell} {a} + {b}");
                let Some(product) = t.ok(
                    oracle::tensor(&j(&g, w_module(&a)), &j(&g, w_module(&b)), &cfg()),
                    what,
                ) else {
                    continue;
                };
                let Some(c) = t.ok(cap_of_endo_permutation(&product), what) else {
                    continue;
                };
                t.check(c == w_module(&sum), || {
                    format!("{}: cap J_{c}, expected J_{}", what(), w_module(&sum))
                });
            }
        }
    }
    t.finish()
}

fn classification() -> Result<String, String> {
    let mut t = Tally::default();
    for p in [2u64, 3, 5, 7] {
        for ell in 1..=4 {
            let g = group(p, ell);
            let mut seen: BTreeMap<BigUint, DadeElement> = BTreeMap::new();
            for a in DadeElement::all(&g) {
                let n = w_module(&a);
                t.check(&n % p != BigUint::from(0u8), || {
                    format!("C_{p}^{ell}: p divides dim W_D({a}) = {n}")
                });
                match seen.get(&n) {
                    Some(b) => t.check(false, || {
                        format!("C_{p}^{ell}: W_D({b}) = W_D({a}) = J_{n}, not injective")
                    }),
                    None => t.check(true, String::new),
                }
                seen.insert(n.clone(), a.clone());
                if p == 3 && ell <= 3 {
                    let m = j(&g, n.clone());
                    let endo = t.ok(is_endo_permutation(&m, &cfg()), || {
                        format!("C_3^{ell} J_{n}")
                    });
                    t.check(endo == Some(true), || {
                        format!("C_3^{ell}: J_{n} is not endo-permutation")
                    });
                    let c = t.ok(cap(&m, &cfg()), || format!("C_3^{ell} cap J_{n}"));
                    t.check(c.as_ref() == Some(&n), || {
                        format!("C_3^{ell}: cap J_{n} = {c:?}")
                    });
                }
            }
        }
    }
    t.finish()
}

fn lift_complement() -> Result<String, String> {
    let mut t = Tally::default();
    for p in [3u64, 5, 7] {
        for ell in 1..=4 {
            let g = group(p, ell);
            let top = DadeElement::generator(g.clone(), 0).unwrap();
            for a in DadeElement::all(&g) {
                let x = lift_character(&a).unwrap();
                let y = lift_character(&dade_add(&a, &top).unwrap()).unwrap();
                let negated: Vec<BigInt> = x.layer_values().iter().map(|v| -v).collect();
                t.check(y.layer_values() == negated.as_slice(), || {
                    format!("C_{p}^{ell} {a}: values not negated")
                });
                t.check(y.dim() + x.dim() == *g.order(), || {
                    format!("C_{p}^{ell} {a}: dimensions do not add to p^ell")
                });
            }
        }
    }
    t.finish()
}

fn sign_formula() -> Result<String, String> {
    let mut t = Tally::default();
    for p in [3u64, 5, 7] {
        for ell in 1..=4 {
            let g = group(p, ell);
            for a in DadeElement::all(&g) {
                let s = psi(&a);
                let lift = lift_character(&a).unwrap();
                t.check(lift.sign_pattern() == s.signs(), || {
                    format!("C_{p}^{ell} {a}: lift signs differ from psi")
                });
                t.check(psi_inverse(&s) == a, || {
                    format!("C_{p}^{ell} {a}: psi_inverse(psi(a)) != a")
                });
                for b in DadeElement::all(&g) {
                    let lhs = psi(&dade_add(&a, &b).unwrap());
                    t.check(lhs == s.product(&psi(&b)).unwrap(), || {
                        format!("C_{p}^{ell}: psi({a} + {b}) not a product")
                    });
                }
            }
        }
    }
    t.finish()
}

/// Each element with `alpha_0 = 0`, paired with five random positive
/// magnitude vectors.
fn round_trip_inputs() -> Vec<(DadeElement, Vec<BigInt>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for p in [3u64, 5] {
        for ell in 1..=4 {
            let g = group(p, ell);
            for a in DadeElement::all(&g).filter(|a| !a.alpha()[0]) {
                for _ in 0..5 {
                    let values = psi(&a)
                        .signs()
                        .iter()
                        .map(|s| {
                            let mag = BigInt::from(rng.gen_range(1u64..u64::MAX))
                                * rng.gen_range(1u64..1 << 20);
                            if *s == Sign::Minus {
                                -mag
                            } else {
                                mag
                            }
                        })
                        .collect();
                    out.push((a.clone(), values));
                }
            }
        }
    }
    out
}

fn with_zero(values: &[BigInt], layer: usize) -> Vec<BigInt> {
    let mut v = values.to_vec();
    v[layer] = BigInt::from(0);
    v
}

fn signs_round_trip() -> Result<String, String> {
    let mut t = Tally::default();
    for (k, (a, values)) in round_trip_inputs().into_iter().enumerate() {
        let g = a.group().clone();
        let negated: Vec<BigInt> = values.iter().map(|v| -v).collect();
        for (case, v) in [("a", values.clone()), ("b", negated)] {
            let b = BlockDescriptor::from_values(g.clone(), v);
            let w = infer_w(&b).map(|w| w.dade);
            t.check(w.as_ref() == Ok(&a), || {
                format!("{a} case ({case}): inferred {w:?}")
            });
        }
        let layer = k % values.len();
        let b = BlockDescriptor::from_values(g, with_zero(&values, layer));
        let r = infer_w(&b);
        t.check(
            matches!(r, Err(Error::ZeroCharacterValue { layer: l }) if l == layer + 1),
            || format!("{a}: zero at layer {} gave {r:?}", layer + 1),
        );
    }
    t.finish()
}

fn triviality_by_signs() -> Result<String, String> {
    let mut t = Tally::default();
    for (k, (a, values)) in round_trip_inputs().into_iter().enumerate() {
        let g = a.group().clone();
        let negated: Vec<BigInt> = values.iter().map(|v| -v).collect();
        let zeroed = with_zero(&values, k % values.len());
        for v in [values, negated, zeroed] {
            let b = BlockDescriptor::from_values(g.clone(), v);
            let by_signs = is_trivial_by_signs(&b).ok();
            let inferred = infer_w(&b).ok().map(|w| w.dade.is_zero());
            t.check(by_signs == inferred, || {
                format!("{a}: {by_signs:?} vs {inferred:?}")
            });
        }
    }
    t.finish()
}

fn restriction_cap() -> Result<String, String> {
    let mut t = Tally::default();
    let g = group(3, 3);
    for a in DadeElement::all(&g) {
        let n = w_module(&a);
        for i in 1..=3 {
            let what = || format!("{a} i = {i}");
            let Some(closed) = t.ok(restrict_cap(&g, &n, i), what) else {
                continue;
            };
            let oracle_cap =
                oracle::restrict(&j(&g, n.clone()), i, &cfg()).and_then(|r| cap(&r, &cfg()));
            t.check(oracle_cap.as_ref().ok() == Some(&closed), || {
                format!("{}: closed J_{closed}, oracle {oracle_cap:?}", what())
            });
            let sub = g.subgroup(i).unwrap();
            for k in 1..=i {
                let chained = restrict_cap(&sub, &closed, k);
                let direct = restrict_cap(&g, &n, k);
                t.check(chained.is_ok() && chained.ok() == direct.ok(), || {
                    format!("{}: chain through D_{k} differs", what())
                });
            }
        }
        if !a.alpha()[0] {
            let values: Vec<BigInt> = psi(&a)
                .signs()
                .iter()
                .map(|s| BigInt::from(s.as_i8()))
                .collect();
            let w = infer_w(&BlockDescriptor::from_values(g.clone(), values)).unwrap();
            for i in 1..=3 {
                t.check(
                    restrict_w(&w, i).ok() == restrict_cap(&g, &n, i).ok(),
                    || format!("{a}: restrict_w at {i}"),
                );
            }
        }
    }
    let c9 = group(3, 2);
    let witness = restrict_cap(&c9, &BigUint::from(8u8), 1).ok();
    t.check(witness == Some(BigUint::from(2u8)), || {
        format!("Cap Res C_9 to C_3 of J_8 = {witness:?}")
    });
    let by_oracle = oracle::restrict(&j(&c9, 8u8), 1, &cfg())
        .and_then(|r| cap(&r, &cfg()))
        .ok();
    t.check(by_oracle == Some(BigUint::from(2u8)), || {
        format!("oracle witness gave {by_oracle:?}")
    });
    t.finish()
}

fn relative_heller_closed_form() -> Result<String, String> {
    let mut t = Tally::default();
    for p in [2u64, 3, 5] {
        for ell in 1..=3 {
            let g = group(p, ell);
            let order = g.order_usize().unwrap();
            for n in 1..=order {
                for i in 0..=ell {
                    let closed = relative_heller(&j(&g, n), i).unwrap();
                    let kernel = oracle::relative_heller_part(&g, n, i, &cfg());
                    t.check(kernel.as_ref().ok() == Some(&closed), || {
                        format!("C_{p}^{ell} J_{n} i = {i}: closed {closed}, oracle {kernel:?}")
                    });
                }
            }
        }
    }
    t.finish()
}

/// `p^ell` for primes with `p^ell <= bound`.
fn prime_powers(bound: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        let mut ell = 1;
        while p.pow(ell) <= bound {
            out.push((p, ell));
            ell += 1;
        }
    }
    out
}

fn complementary(t: &ValidTree) -> bool {
    let [x, y] = type_functions(t);
    x.is_admissible(t.tree())
        && y.is_admissible(t.tree())
        && x.signs.len() == t.tree().vertices.len()
        && x.signs.iter().all(|(v, s)| y.signs.get(v) == Some(&-*s))
}

fn random_tree(rng: &mut ChaCha8Rng, e: usize) -> BrauerTree {
    let n = e + 1;
    let mut edges = Vec::with_capacity(e);
    if n == 2 {
        edges.push((0, 1));
    } else {
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &c in &code {
            degree[c] += 1;
        }
        for &c in &code {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, c));
            degree[leaf] -= 1;
            degree[c] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
    }
    let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let mut orders: BTreeMap<String, Vec<String>> =
        names.iter().map(|v| (v.clone(), Vec::new())).collect();
    for &(a, b) in &edges {
        orders.get_mut(&names[a]).unwrap().push(names[b].clone());
        orders.get_mut(&names[b]).unwrap().push(names[a].clone());
    }
    for o in orders.values_mut() {
        o.shuffle(rng);
    }
    let p = (1..)
        .map(|k| k * e as u64 + 1)
        .find(|&p| is_prime(p))
        .unwrap();
    let m = (p - 1) / e as u64;
    BrauerTree {
        label: None,
        group: group(p, 1),
        exceptional: (m > 1).then(|| names[rng.gen_range(0..n)].clone()),
        multiplicity: BigUint::from(m),
        edges: edges
            .iter()
            .map(|&(a, b)| (names[a].clone(), names[b].clone()))
            .collect(),
        vertices: names,
        orders,
    }
}

/// Renames vertices and rotates every cyclic order.
fn relabel(rng: &mut ChaCha8Rng, t: &BrauerTree) -> BrauerTree {
    let mut fresh: Vec<String> = (0..t.vertices.len()).map(|k| format!("w{k}")).collect();
    fresh.shuffle(rng);
    let map: BTreeMap<&String, String> = t.vertices.iter().zip(fresh).collect();
    let orders = t
        .orders
        .iter()
        .map(|(v, o)| {
            let mut o: Vec<String> = o.iter().map(|w| map[w].clone()).collect();
            let k = rng.gen_range(0..o.len().max(1));
            o.rotate_left(k);
            (map[v].clone(), o)
        })
        .collect();
    BrauerTree {
        label: None,
        group: t.group.clone(),
        vertices: t.vertices.iter().map(|v| map[v].clone()).collect(),
        edges: t
            .edges
            .iter()
            .map(|(a, b)| (map[b].clone(), map[a].clone()))
            .collect(),
        orders,
        exceptional: t.exceptional.as_ref().map(|v| map[v].clone()),
        multiplicity: t.multiplicity.clone(),
    }
}

fn mirror(t: &BrauerTree) -> BrauerTree {
    let mut m = t.clone();
    m.orders.values_mut().for_each(|o| o.reverse());
    m
}

fn is_rotation(a: &[String], b: &[String]) -> bool {
    a.len() == b.len()
        && (a.is_empty()
            || (0..a.len()).any(|k| a.iter().cycle().skip(k).take(a.len()).eq(b.iter())))
}

/// Exhaustive search over vertex bijections.
fn brute_isomorphic(a: &BrauerTree, b: &BrauerTree, planar: bool) -> bool {
    if a.vertices.len() != b.vertices.len()
        || a.multiplicity != b.multiplicity
        || a.exceptional.is_some() != b.exceptional.is_some()
    {
        return false;
    }
    let b_edges: HashSet<(&String, &String)> =
        b.edges.iter().flat_map(|(x, y)| [(x, y), (y, x)]).collect();
    let mut image: Vec<usize> = (0..b.vertices.len()).collect();
    let index: BTreeMap<&String, usize> =
        a.vertices.iter().enumerate().map(|(k, v)| (v, k)).collect();
    loop {
        let f = |v: &String| &b.vertices[image[index[v]]];
        let ok = a.edges.iter().all(|(x, y)| b_edges.contains(&(f(x), f(y))))
            && a.exceptional.as_ref().map(f) == b.exceptional.as_ref()
            && (!planar
                || a.orders.iter().all(|(v, o)| {
                    let mapped: Vec<String> = o.iter().map(|w| f(w).clone()).collect();
                    is_rotation(&mapped, &b.orders[f(v)])
                }));
        if ok {
            return true;
        }
        if !next_permutation(&mut image) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let k = (i..v.len()).rev().find(|&k| v[k] > v[i - 1]).unwrap();
    v.swap(i - 1, k);
    v[i..].reverse();
    true
}

fn brauer_trees() -> Result<String, String> {
    let mut t = Tally::default();
    for (p, ell) in prime_powers(343) {
        let g = group(p, ell);
        let order_minus_one = p.pow(ell) - 1;
        for e in (1..=order_minus_one).filter(|e| order_minus_one % e == 0) {
            let m = order_minus_one / e;
            let built = star(e as usize, BigUint::from(m), g.clone());
            let admissible = (p - 1) % e == 0;
            t.check(built.is_ok() == admissible, || {
                format!("C_{p}^{ell} star e = {e}: admissible {admissible}")
            });
            let off = star(e as usize, BigUint::from(m + 1), g.clone());
            t.check(off.is_err(), || {
                format!("C_{p}^{ell} star e = {e} m = {}: accepted", m + 1)
            });
            let Ok(s) = built else { continue };
            let what = || format!("C_{p}^{ell} star e = {e} m = {m}");
            t.check(s.tree().validate().is_empty(), || {
                format!("{}: violations", what())
            });
            t.check(s.edge_count() == e as usize, || {
                format!("{}: edge count", what())
            });
            t.check(s.tree().exceptional.is_some() == (m > 1), || {
                format!("{}: exceptional vertex", what())
            });
            t.check(complementary(&s), || format!("{}: type functions", what()));
            let mut rng = ChaCha8Rng::seed_from_u64(p * 1000 + e);
            let r = relabel(&mut rng, s.tree()).into_valid().unwrap();
            t.check(similar(&s, &r) && planar_isomorphic(&s, &r), || {
                format!("{}: relabelled copy", what())
            });
            let mm = mirror(s.tree()).into_valid().unwrap();
            t.check(planar_isomorphic(&s, &mm), || {
                format!("{}: mirror image", what())
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..100 {
        let e = rng.gen_range(1..=12);
        let a = random_tree(&mut rng, e);
        let what = || format!("random tree {k} with {e} edges");
        t.check(a.validate().is_empty(), || {
            format!("{}: violations {:?}", what(), a.validate())
        });
        let Ok(va) = a.clone().into_valid() else {
            continue;
        };
        t.check(complementary(&va), || format!("{}: type functions", what()));
        let r = relabel(&mut rng, &a).into_valid().unwrap();
        t.check(similar(&va, &r) && planar_isomorphic(&va, &r), || {
            format!("{}: relabelled copy", what())
        });
        let mm = mirror(&a).into_valid().unwrap();
        t.check(similar(&va, &mm), || {
            format!("{}: mirror not similar", what())
        });
        let b = random_tree(&mut rng, e);
        let vb = b.clone().into_valid().unwrap();
        if e <= 7 {
            for (other, vo) in [(&b, &vb), (&mirror(&a), &mm)] {
                let sim = similar(&va, vo);
                let planar = planar_isomorphic(&va, vo);
                t.check(sim == brute_isomorphic(&a, other, false), || {
                    format!("{}: similar = {sim} disagrees with search", what())
                });
                t.check(planar == brute_isomorphic(&a, other, true), || {
                    format!("{}: planar = {planar} disagrees with search", what())
                });
            }
        }
        t.check(!planar_isomorphic(&va, &vb) || similar(&va, &vb), || {
            format!("{}: planar but not similar", what())
        });
    }
    t.finish()
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn endoperm(args: &[&str], stdin: Option<&str>) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_endoperm"))
        .args(args)
        .env_remove("ENDOPERM_ORACLE_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("endoperm runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn cli_contract() -> Result<String, String> {
    let mut t = Tally::default();
    let exits: &[(&[&str], i32)] = &[
        (&["infer", "blocks_ok.json"], 0),
        (&["infer", "blocks_record_errors.json"], 1),
        (&["infer", "composite_p.json"], 2),
        (&["infer", "exponent.json"], 2),
        (&["infer", "fractional.json"], 2),
        (&["infer", "schema.json"], 2),
        (&["infer", "syntax.json"], 2),
        (&["infer", "unknown_field.json"], 2),
        (&["infer", "version.json"], 2),
        (&["infer", "wrong_type.json"], 2),
        (&["infer", "missing.json"], 2),
        (&["tree", "check", "trees.json"], 0),
        (&["tree", "check", "trees_invalid.json"], 1),
        (&["tree", "compare", "trees.json", "spider", "mirror"], 0),
        (
            &["tree", "compare", "trees_invalid.json", "triangle", "ok"],
            1,
        ),
        (&["tree", "compare", "trees.json", "spider", "absent"], 2),
        (&["verify", "3", "2"], 0),
        (&["verify", "3", "9"], 2),
        (&["verify", "3", "17"], 2),
        (&["verify", "9", "2"], 2),
        (&["verify", "3", "2", "--oracle-cap", "10"], 2),
        (&["tree", "emit-star", "3", "4", "3", "2"], 2),
        (&["dade", "add", "3", "3", "011", "11"], 2),
    ];
    for (args, code) in exits {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".json") {
                    fixture(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = endoperm(&refs, None);
        t.check(out.status.code() == Some(*code), || {
            format!("{:?}: exit {:?}, expected {code}", args, out.status.code())
        });
    }

    let mut goldens: Vec<(Vec<String>, PathBuf)> = Vec::new();
    let mut names: Vec<_> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    for name in &names {
        let stem = name.trim_end_matches(".json");
        let (command, suffix) = if stem.starts_with("trees") {
            (vec!["tree", "check"], "check")
        } else {
            (vec!["infer"], "infer")
        };
        let mut args: Vec<String> = command.into_iter().map(String::from).collect();
        args.push(fixture(name));
        goldens.push((
            args,
            fixtures().join(format!("expected/{stem}.{suffix}.jsonl")),
        ));
    }
    goldens.push((
        ["verify", "3", "2"].map(String::from).to_vec(),
        fixtures().join("expected/verify-3-2.jsonl"),
    ));
    for (args, golden) in &goldens {
        let mut args = args.clone();
        args.extend(["--format", "json-lines"].map(String::from));
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = endoperm(&refs, None).stdout;
        let second = endoperm(&refs, None).stdout;
        let expected = std::fs::read(golden).unwrap_or_default();
        t.check(first == second, || {
            format!("{args:?}: output differs between runs")
        });
        t.check(first == expected, || {
            format!("{args:?}: output differs from {}", golden.display())
        });
    }

    let text = std::fs::read_to_string(fixtures().join("blocks_ok.json")).unwrap();
    let piped = endoperm(&["infer", "-", "--format", "json-lines"], Some(&text)).stdout;
    t.check(
        piped == std::fs::read(fixtures().join("expected/blocks_ok.infer.jsonl")).unwrap(),
        || "infer from stdin differs from infer from a file".into(),
    );

    let dir = tempfile::tempdir().unwrap();
    for name in &names {
        let text = std::fs::read_to_string(fixtures().join(name)).unwrap();
        let Ok(parsed) = parse_descriptor(&text) else {
            continue;
        };
        let emitted = emit_descriptor(&parsed);
        let reparsed = parse_descriptor(&emitted);
        t.check(reparsed.as_ref() == Ok(&parsed), || {
            format!("{name}: parse(emit(x)) != x")
        });
        t.check(
            reparsed.map(|r| emit_descriptor(&r)).as_deref() == Ok(emitted.as_str()),
            || format!("{name}: emit is not stable"),
        );
        let path = dir.path().join(name);
        std::fs::write(&path, &emitted).unwrap();
        let path = path.to_string_lossy().into_owned();
        let args: &[&str] = if name.starts_with("trees") {
            &["tree", "check"]
        } else {
            &["infer"]
        };
        let run = |p: &str| {
            let mut a = args.to_vec();
            a.extend([p, "--format", "json-lines"]);
            endoperm(&a, None)
        };
        let (x, y) = (run(&fixture(name)), run(&path));
        t.check(
            x.stdout == y.stdout && x.status.code() == y.status.code(),
            || format!("{name}: emitted copy reports differently"),
        );
    }

    let star_out = endoperm(&["tree", "emit-star", "4", "6", "5", "2"], None);
    let star_text = String::from_utf8(star_out.stdout).unwrap();
    let star_file = parse_descriptor(&star_text);
    t.check(
        star_file.as_ref().map(|f| f.trees.len()) == Ok(1)
            && star_file.as_ref().map(emit_descriptor).as_deref() == Ok(star_text.as_str()),
        || "emit-star output does not round trip".into(),
    );
    let path = dir.path().join("star.json");
    std::fs::write(&path, &star_text).unwrap();
    let checked = endoperm(&["tree", "check", &path.to_string_lossy()], None);
    t.check(checked.status.code() == Some(0), || {
        "emitted star does not check".into()
    });
    t.finish()
}

type Criterion = (&'static str, Duration, fn() -> Result<String, String>);

fn main() {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 10] = [
        ("dade group law by oracle", secs(10), dade_group_law),
        ("classification of W_D(alpha)", secs(30), classification),
        (
            "top generator complements the lift",
            secs(1),
            lift_complement,
        ),
        ("sign formula for psi", secs(1), sign_formula),
        ("inference round trip", secs(5), signs_round_trip),
        ("triviality by signs", secs(5), triviality_by_signs),
        ("restriction then cap", secs(30), restriction_cap),
        (
            "relative Heller closed form",
            secs(60),
            relative_heller_closed_form,
        ),
        ("Brauer tree suite", secs(10), brauer_trees),
        ("command line contract", secs(5), cli_contract),
    ];
    let mut failed = BTreeSet::new();
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = (took > *budget).then(|| {
            format!(
                "took {:.2}s, budget {}s",
                took.as_secs_f64(),
                budget.as_secs()
            )
        });
        let n = k + 1;
        match (outcome, over) {
            (Ok(detail), None) => println!(
                "criterion {n}: PASS {name}: {detail} in {:.2}s",
                took.as_secs_f64()
            ),
            (Ok(detail), Some(over)) => {
                failed.insert(n);
                println!("criterion {n}: FAIL {name}: {detail}, {over}");
            }
            (Err(detail), _) => {
                failed.insert(n);
                println!(
                    "criterion {n}: FAIL {name}: {detail} in {:.2}s",
                    took.as_secs_f64()
                );
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
