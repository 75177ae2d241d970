use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cyclic_quiver::classifier::{classify, ClassificationReport};
use cyclic_quiver::cli::config::Config;
use cyclic_quiver::oracle::{
    build_setup, build_setup_with, check_base_change, eigenspace_dim, extract_vertex_pairing, fixed_lie_dim,
    isotypic_multiplicities, verify, BuildOptions, PolarizedSetup, VerifyOptions,
};
use cyclic_quiver::scalars::{euler_phi, rat, CyclotomicNumber};
use cyclic_quiver::setup::{identity, FElem, SemilinearOperator};

fn load(toml: &str) -> (ClassificationReport, Vec<u64>) {
    let cfg = Config::from_toml(toml).unwrap();
    let r = classify(&cfg.to_params().unwrap()).unwrap();
    let mult = cfg.multiplicity_vector(&r.quiver.spectrum).unwrap();
    (r, mult)
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(17)
}

const VE1: &str = r#"
regime = "numberfield"
M = 3
n = 1
m = 3
beta = { zeta_exp = "0" }
c = { zeta_exp = "0" }
xi = { zeta_exp = "1/3" }
multiplicities = [
  { vertex = "e(0)", d = 1 },
  { vertex = "e(1/3)", d = 1 },
  { vertex = "e(2/3)", d = 1 },
]
"#;

fn cyclic_permutation(r: &ClassificationReport) -> PolarizedSetup {
    let alg = r.params().algebra().unwrap();
    let mut t = vec![alg.zero(); 9];
    for i in 0..3 {
        t[((i + 1) % 3) * 3 + i] = alg.one();
    }
    PolarizedSetup::explicit(r.clone(), SemilinearOperator { size: 3, t }, Some(identity(&alg, 3))).unwrap()
}

#[test]
fn cyclic_permutation_has_one_dimensional_isotypic_pieces() {
    let (r, _) = load(VE1);
    let s = cyclic_permutation(&r);
    assert_eq!(isotypic_multiplicities(&s, true, &mut rng()).unwrap(), vec![1, 1, 1]);
    let w = FElem(vec![CyclotomicNumber::root_of_unity(3, &rat(1, 3)).unwrap()]);
    let phi = euler_phi(3) as usize;
    assert_eq!(fixed_lie_dim(&s, true, &mut rng()).nullity / phi, 1);
    assert_eq!(eigenspace_dim(&s, &w, true, &mut rng()).nullity / phi, 1);
}

#[test]
fn self_paired_vertex_carries_a_nondegenerate_form() {
    let (r, mult) = load(VE1);
    let s = build_setup(&r, &mult, 3).unwrap();
    let i = r.quiver.spectrum.index_of("e(0)").unwrap();
    let pc = extract_vertex_pairing(&s, i).unwrap();
    assert_eq!(pc.dim, 1);
    assert_eq!(pc.gram.len(), 1);
    assert_ne!(pc.gram[0], "0");
    assert!(pc.holds());
}

#[test]
fn linear_diagonal_eigenspace() {
    let (r, _) = load(
        r#"
regime = "numberfield"
M = 3
n = 1
m = 3
mode = "linear"
beta = { zeta_exp = "0" }
xi = { zeta_exp = "1/3" }
"#,
    );
    let alg = r.params().algebra().unwrap();
    let z = CyclotomicNumber::zeta_pow(3, 1);
    let t = vec![alg.one(), alg.zero(), alg.zero(), FElem(vec![z.clone()])];
    let s = PolarizedSetup::explicit(r, SemilinearOperator { size: 2, t }, None).unwrap();
    let dim = eigenspace_dim(&s, &FElem(vec![z]), true, &mut rng()).nullity / euler_phi(3) as usize;
    assert_eq!(dim, 1);
}

fn order_four(epsilon: i64, d: u64) -> String {
    format!(
        r#"
regime = "numberfield"
M = 4
n = 1
m = 4
epsilon = {epsilon}
beta = {{ zeta_exp = "0" }}
c = {{ zeta_exp = "0" }}
xi = {{ zeta_exp = "0" }}
multiplicities = [
  {{ vertex = "e(0)", d = {d} }},
  {{ vertex = "e(1/4)", d = {d} }},
  {{ vertex = "e(1/2)", d = {d} }},
  {{ vertex = "e(3/4)", d = {d} }},
]
"#
    )
}

#[test]
fn eigenspaces_sum_to_the_full_lie_algebra() {
    for (eps, d) in [(1i64, 1u64), (1, 2), (-1, 2)] {
        let (r, mult) = load(&order_four(eps, d));
        let s = build_setup(&r, &mult, 5).unwrap();
        let n = s.size;
        let total: usize = (0..4)
            .map(|j| {
                let xi = FElem(vec![CyclotomicNumber::zeta_pow(4, j)]);
                eigenspace_dim(&s, &xi, false, &mut rng()).nullity / 2
            })
            .sum();
        let full = if eps == 1 { n * (n - 1) / 2 } else { n * (n + 1) / 2 };
        assert_eq!(total, full, "epsilon {} d {}", eps, d);
    }
}

#[test]
fn dimensions_do_not_depend_on_the_basis() {
    let (r, mult) = load(&order_four(1, 2));
    let plain = build_setup_with(&r, &mult, 9, BuildOptions { randomize: false, scramble: false }).unwrap();
    for seed in [1u64, 2, 3] {
        let s = build_setup_with(&r, &mult, seed, BuildOptions::default()).unwrap();
        assert_ne!(s.theta, plain.theta);
        for j in 0..4 {
            let xi = FElem(vec![CyclotomicNumber::zeta_pow(4, j)]);
            assert_eq!(
                eigenspace_dim(&s, &xi, false, &mut rng()).nullity,
                eigenspace_dim(&plain, &xi, false, &mut rng()).nullity
            );
        }
        assert_eq!(fixed_lie_dim(&s, false, &mut rng()).nullity, fixed_lie_dim(&plain, false, &mut rng()).nullity);
    }
}

#[test]
fn linear_eigenspaces_count_arrows() {
    let (r, mult) = load(
        r#"
regime = "numberfield"
M = 12
n = 1
m = 6
mode = "linear"
beta = { zeta_exp = "0" }
xi = { zeta_exp = "1/3" }
multiplicities = [
  { vertex = "e(0)", d = 1 },
  { vertex = "e(1/6)", d = 2 },
  { vertex = "e(1/3)", d = 3 },
  { vertex = "e(1/2)", d = 1 },
  { vertex = "e(2/3)", d = 2 },
]
"#,
    );
    let s = build_setup(&r, &mult, 4).unwrap();
    let arrows = r.quiver.arrows.as_ref().unwrap();
    let expected: u64 = arrows.iter().map(|a| mult[a.from] * mult[a.to]).sum();
    let xi = s.xi();
    let got = eigenspace_dim(&s, &xi, false, &mut rng()).nullity / euler_phi(12) as usize;
    assert_eq!(got as u64, expected);
    let sq: u64 = mult.iter().map(|d| d * d).sum();
    let h = fixed_lie_dim(&s, false, &mut rng()).nullity / euler_phi(12) as usize;
    assert_eq!(h as u64, sq);
}

#[test]
fn split_swap_satisfies_base_change() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/split_swap.toml")).unwrap();
    let (r, mult) = load(&text);
    for seed in 0..3 {
        let s = build_setup(&r, &mult, seed).unwrap();
        let bc = check_base_change(&s, &s.xi(), false, &mut rng()).unwrap();
        assert!(bc.holds, "{:?}", bc);
    }
    let v = verify(&r, &mult, VerifyOptions { trials: 2, seed: 1, ..Default::default() }).unwrap();
    assert!(v.all_passed, "{:?}", v.failures());
}
