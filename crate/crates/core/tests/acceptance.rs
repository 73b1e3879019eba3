//! Acceptance gate for the library: one test per criterion, each printing a
//! single `criterion N: pass|fail` line (run with `--nocapture` to see the
//! lines for passing criteria). Criteria 7 and 9 exercise the command-line
//! binary and live in the CLI crate's acceptance suite.

use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sftd_core::cross::{build_doubled_matrix, f_cross_barcode_field, f_cross_barcode_graph};
use sftd_core::cubical::{cubical_persistence, CubicalSpec};
use sftd_core::divergence::{sftd_field, sftd_gradient_field, SftdConfig};
use sftd_core::flag::{flag_persistence, FlagComplexSpec};
use sftd_core::metrics::{bottleneck_distance, wasserstein_distance, Diagram};
use sftd_core::oracle;
use sftd_core::synth::{gaussian_minima_field, lattice_defect_field, spheres_bridge_field, Bridge};
use sftd_core::{Barcode64, FiltrationMatrix64, GraphField64, ScalarField64};

fn verdict(criterion: usize, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("criterion {criterion}: pass"),
        Err(msg) => {
            println!("criterion {criterion}: fail");
            panic!("criterion {criterion}: {msg}");
        }
    }
}

/// Random filtration matrix: lower-star diagonal, edges present with the
/// given density at (or a little above) the lower-star value.
fn random_matrix(rng: &mut ChaCha8Rng, n: usize, density: f64) -> FiltrationMatrix64 {
    let mut entries = vec![f64::INFINITY; n * n];
    for i in 0..n {
        entries[i * n + i] = (rng.random_range(0..40) as f64) * 0.25;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(density) {
                let floor = entries[i * n + i].max(entries[j * n + j]);
                let bump = if rng.random_bool(0.5) {
                    (rng.random_range(0..4) as f64) * 0.25
                } else {
                    0.0
                };
                entries[i * n + j] = floor + bump;
                entries[j * n + i] = floor + bump;
            }
        }
    }
    FiltrationMatrix64::new(n, entries).expect("valid matrix")
}

fn random_field(rng: &mut ChaCha8Rng, shape: Vec<usize>) -> ScalarField64 {
    let len: usize = shape.iter().product();
    let values = (0..len)
        .map(|_| (rng.random_range(0..=4) as f64) * 0.5)
        .collect();
    ScalarField64::new(shape, values).expect("valid field")
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> GraphField64 {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|_| rng.random_bool(density))
        .collect();
    let values = (0..n)
        .map(|_| (rng.random_range(0..12) as f64) * 0.5)
        .collect();
    GraphField64::new(n, &edges, values).expect("valid graph")
}

/// Distinct values with pairwise gaps of at least 1e-3, so ±1e-5 probes
/// never cross an ordering boundary.
fn generic_values(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    sample(rng, 100_000, count)
        .into_iter()
        .map(|v| v as f64 * 1e-3)
        .collect()
}

/// Random chordal graph: each vertex attaches to a random subset of an
/// existing clique (a perfect elimination ordering in reverse). Every
/// sublevel clique complex is then contractible per component, which the
/// constant-minimum identity implicitly requires — on a chordless cycle the
/// cross barcode also records when f acquires its essential classes, and no
/// plain finite bar matches those.
fn random_chordal(rng: &mut ChaCha8Rng, n: usize) -> GraphField64 {
    let mut cliques: Vec<Vec<usize>> = vec![Vec::new()];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        let base = cliques[rng.random_range(0..cliques.len())].clone();
        let mut attach: Vec<usize> = base.into_iter().filter(|_| rng.random_bool(0.8)).collect();
        for &u in &attach {
            edges.push((u, v));
        }
        attach.push(v);
        cliques.push(attach);
    }
    let values = (0..n)
        .map(|_| (rng.random_range(0..12) as f64) * 0.5)
        .collect();
    GraphField64::new(n, &edges, values).expect("valid graph")
}

#[test]
fn criterion_1_engines_match_the_oracle() {
    let outcome = (|| {
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(0xAC01);
        for trial in 0..510 {
            let n = rng.random_range(1..=8);
            let density = [0.3, 0.6, 1.0][trial % 3];
            let matrix = random_matrix(&mut rng, n, density);
            let max_dim = rng.random_range(0..=2.min(n - 1));
            let engine = flag_persistence(&FlagComplexSpec {
                matrix: &matrix,
                max_dim,
            })
            .map_err(|e| format!("flag trial {trial}: {e}"))?;
            let reference = oracle::enumerate_flag(&matrix, max_dim)
                .map_err(|e| format!("flag oracle trial {trial}: {e}"))?
                .reduce();
            if engine != reference {
                return Err(format!(
                    "flag trial {trial} (n {n}, density {density}) diverges"
                ));
            }
        }
        for trial in 0..510 {
            let shape = match trial % 3 {
                0 => vec![rng.random_range(1..=4)],
                1 => vec![rng.random_range(1..=4), rng.random_range(1..=4)],
                _ => vec![3, 3, 2],
            };
            let max_dim = shape.len();
            let field = random_field(&mut rng, shape.clone());
            let engine = cubical_persistence(&CubicalSpec {
                field: &field,
                max_dim,
            })
            .map_err(|e| format!("cubical trial {trial}: {e}"))?;
            let reference = oracle::enumerate_cubical(&field, max_dim)
                .map_err(|e| format!("cubical oracle trial {trial}: {e}"))?
                .reduce();
            if engine != reference {
                return Err(format!("cubical trial {trial} (shape {shape:?}) diverges"));
            }
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs() >= 120 {
            return Err(format!(
                "oracle sweep took {elapsed:?}, budget is 2 minutes"
            ));
        }
        Ok(())
    })();
    verdict(1, outcome);
}

#[test]
fn criterion_2_vanishing_and_degree_shift() {
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xAC02);

        // Identity one: comparing a function against itself leaves nothing.
        for trial in 0..120 {
            let n = rng.random_range(1..=6);
            let f = random_graph(&mut rng, n, 0.6);
            let cross = f_cross_barcode_graph(&f, &f, 2)
                .map_err(|e| format!("vanish graph trial {trial}: {e}"))?;
            if !cross.barcode().finite().is_empty() {
                return Err(format!("vanish graph trial {trial}: finite bars remain"));
            }
        }
        for trial in 0..120 {
            let shape = vec![rng.random_range(1..=4), rng.random_range(1..=4)];
            let f = random_field(&mut rng, shape);
            let cross = f_cross_barcode_field(&f, &f, 2)
                .map_err(|e| format!("vanish field trial {trial}: {e}"))?;
            if !cross.barcode().finite().is_empty() {
                return Err(format!("vanish field trial {trial}: finite bars remain"));
            }
        }

        // Identity two: against the constant-minimum function the cross
        // barcode reproduces the plain sublevel barcode one degree up.
        for trial in 0..120 {
            let n = rng.random_range(1..=6);
            let f = random_chordal(&mut rng, n);
            let floor = f.values().iter().cloned().fold(f64::INFINITY, f64::min);
            let g = f
                .with_values(vec![floor; f.vertex_count()])
                .expect("same graph");
            let top = 2.min(f.vertex_count());
            let cross = f_cross_barcode_graph(&f, &g, top)
                .map_err(|e| format!("shift graph trial {trial}: {e}"))?;
            let matrix = FiltrationMatrix64::from_vertex_function(&f);
            let plain = flag_persistence(&FlagComplexSpec {
                matrix: &matrix,
                max_dim: top - 1,
            })
            .map_err(|e| format!("plain graph trial {trial}: {e}"))?;
            for k in 0..top {
                if cross.barcode().intervals(k + 1) != plain.intervals(k) {
                    return Err(format!("shift graph trial {trial}: degree {k} differs"));
                }
            }
        }
        for trial in 0..120 {
            let shape = vec![rng.random_range(2..=4), rng.random_range(2..=4)];
            let f = random_field(&mut rng, shape.clone());
            let floor = f.values().iter().cloned().fold(f64::INFINITY, f64::min);
            let g = ScalarField64::new(shape, vec![floor; f.values().len()]).expect("same shape");
            let cross = f_cross_barcode_field(&f, &g, 2)
                .map_err(|e| format!("shift field trial {trial}: {e}"))?;
            let plain = cubical_persistence(&CubicalSpec {
                field: &f,
                max_dim: 1,
            })
            .map_err(|e| format!("plain field trial {trial}: {e}"))?;
            for k in 0..2 {
                if cross.barcode().intervals(k + 1) != plain.intervals(k) {
                    return Err(format!("shift field trial {trial}: degree {k} differs"));
                }
            }
        }
        Ok(())
    })();
    verdict(2, outcome);
}

#[test]
fn criterion_3_stability_bounds() {
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xAC03);
        let slack = 1e-9;

        // Bound one: perturbing both inputs moves the cross barcode by at
        // most the largest pointwise change, in bottleneck distance.
        let mut trials_a = 0;
        while trials_a < 220 {
            let graph_turn = trials_a % 2 == 0;
            let (base, wobbled, eps) = if graph_turn {
                let n = rng.random_range(2..=6);
                let f = random_graph(&mut rng, n, 0.7);
                let g = f
                    .with_values(
                        (0..n)
                            .map(|_| (rng.random_range(0..12) as f64) * 0.5)
                            .collect(),
                    )
                    .expect("same graph");
                let scale = [0.05, 0.2][(trials_a / 2) % 2];
                let mut worst = 0.0f64;
                let mut wobble = |vals: &[f64]| -> Vec<f64> {
                    vals.iter()
                        .map(|v| {
                            let shift: f64 = rng.random_range(-scale..scale);
                            worst = worst.max(shift.abs());
                            v + shift
                        })
                        .collect()
                };
                let fp = f.with_values(wobble(f.values())).expect("same graph");
                let gp = g.with_values(wobble(g.values())).expect("same graph");
                let a = f_cross_barcode_graph(&f, &g, 1).map_err(|e| e.to_string())?;
                let b = f_cross_barcode_graph(&fp, &gp, 1).map_err(|e| e.to_string())?;
                (a, b, worst)
            } else {
                let shape = vec![rng.random_range(2..=4), rng.random_range(2..=4)];
                let f = random_field(&mut rng, shape.clone());
                let g = random_field(&mut rng, shape.clone());
                let scale = 0.1;
                let mut worst = 0.0f64;
                let mut wobble = |vals: &[f64]| -> Vec<f64> {
                    vals.iter()
                        .map(|v| {
                            let shift: f64 = rng.random_range(-scale..scale);
                            worst = worst.max(shift.abs());
                            v + shift
                        })
                        .collect()
                };
                let fp = ScalarField64::new(shape.clone(), wobble(f.values())).expect("shape");
                let gp = ScalarField64::new(shape.clone(), wobble(g.values())).expect("shape");
                let a = f_cross_barcode_field(&f, &g, 1).map_err(|e| e.to_string())?;
                let b = f_cross_barcode_field(&fp, &gp, 1).map_err(|e| e.to_string())?;
                (a, b, worst)
            };
            for k in 0..=1 {
                let da = Diagram::from_barcode(base.barcode(), k);
                let db = Diagram::from_barcode(wobbled.barcode(), k);
                let dist = bottleneck_distance(&da, &db);
                if dist > eps + slack {
                    return Err(format!(
                        "perturbation trial {trials_a} degree {k}: moved {dist} > {eps}"
                    ));
                }
            }
            trials_a += 1;
        }

        // Bound two: the cross barcode of a function against its own
        // perturbation has no bar longer than the perturbation size.
        for trial in 0..220 {
            let graph_turn = trial % 2 == 0;
            let (barcode, eps): (Barcode64, f64) = if graph_turn {
                let n = rng.random_range(2..=6);
                let f = random_graph(&mut rng, n, 0.7);
                let mut worst = 0.0f64;
                let shifted: Vec<f64> = f
                    .values()
                    .iter()
                    .map(|v| {
                        let shift: f64 = rng.random_range(-0.2..0.2);
                        worst = worst.max(shift.abs());
                        v + shift
                    })
                    .collect();
                let fp = f.with_values(shifted).expect("same graph");
                let cross = f_cross_barcode_graph(&f, &fp, 1).map_err(|e| e.to_string())?;
                (cross.barcode().clone(), worst)
            } else {
                let shape = vec![rng.random_range(2..=4), rng.random_range(2..=4)];
                let f = random_field(&mut rng, shape.clone());
                let mut worst = 0.0f64;
                let shifted: Vec<f64> = f
                    .values()
                    .iter()
                    .map(|v| {
                        let shift: f64 = rng.random_range(-0.2..0.2);
                        worst = worst.max(shift.abs());
                        v + shift
                    })
                    .collect();
                let fp = ScalarField64::new(shape, shifted).expect("shape");
                let cross = f_cross_barcode_field(&f, &fp, 1).map_err(|e| e.to_string())?;
                (cross.barcode().clone(), worst)
            };
            for bar in barcode.finite() {
                let length = bar.death - bar.birth;
                if length > eps + slack {
                    return Err(format!(
                        "self-perturbation trial {trial}: bar length {length} > {eps}"
                    ));
                }
            }
        }
        Ok(())
    })();
    verdict(3, outcome);
}

#[test]
fn criterion_4_exact_sequence_rank_identity() {
    // Convention fixed by the single-vertex f == g case: reduced Betti
    // numbers (a rank-1 degree "-1" term for the empty complex, folded in as
    // the -1 offset below), signs (+, -, +) across the f-sublevel complex,
    // the element-wise-minimum complex, and the doubled complex.
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xAC04);
        for trial in 0..110 {
            let n = rng.random_range(1..=6);
            let density = [0.3, 0.6, 0.9][trial % 3];
            let f = random_graph(&mut rng, n, density);
            let g = f
                .with_values(
                    (0..n)
                        .map(|_| (rng.random_range(0..5) as f64) * 0.5)
                        .collect(),
                )
                .expect("same graph");

            let fm = FiltrationMatrix64::from_vertex_function(&f);
            let gm = FiltrationMatrix64::from_vertex_function(&g);
            let min_entries = (0..n * n)
                .map(|at| fm.get(at / n, at % n).min(gm.get(at / n, at % n)))
                .collect();
            let mm = FiltrationMatrix64::new(n, min_entries).map_err(|e| e.to_string())?;
            let doubled = build_doubled_matrix(&f, &g).map_err(|e| e.to_string())?;

            let cf = oracle::enumerate_flag(&fm, n - 1).map_err(|e| e.to_string())?;
            let cm = oracle::enumerate_flag(&mm, n - 1).map_err(|e| e.to_string())?;
            let ce = oracle::enumerate_flag(doubled.matrix(), 2 * n).map_err(|e| e.to_string())?;

            let mut thresholds: Vec<f64> = f.values().iter().chain(g.values()).cloned().collect();
            thresholds.sort_by(|a, b| a.partial_cmp(b).unwrap());
            thresholds.dedup();
            for alpha in thresholds {
                let reduced_sum = |cx: &oracle::ExplicitComplex<f64>, top: usize| {
                    let mut acc = -1i64;
                    for k in 0..=top {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        acc += sign * cx.betti_at(alpha, k) as i64;
                    }
                    acc
                };
                let sum =
                    reduced_sum(&cf, n - 1) - reduced_sum(&cm, n - 1) + reduced_sum(&ce, 2 * n);
                if sum != 0 {
                    return Err(format!(
                        "trial {trial} n {n} alpha {alpha}: alternating sum {sum}"
                    ));
                }
            }
        }
        Ok(())
    })();
    verdict(4, outcome);
}

#[test]
fn criterion_5_gradients_match_finite_differences() {
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xAC05);
        let eps = 1e-5;
        for round in 0..2 {
            let shape: Vec<usize> = if round == 0 {
                vec![8, 8]
            } else {
                vec![4, 4, 4]
            };
            let len: usize = shape.iter().product();
            let degrees: Vec<usize> = (0..shape.len()).collect();
            for trial in 0..112 {
                let config = SftdConfig {
                    degrees: degrees.clone(),
                    p: [1.0, 2.0][trial % 2],
                    symmetric: trial % 3 == 0,
                };
                let mut values = generic_values(&mut rng, 2 * len);
                let gv = values.split_off(len);
                let f = ScalarField64::new(shape.clone(), values).expect("field");
                let g = ScalarField64::new(shape.clone(), gv).expect("field");
                let (_, grad) = sftd_gradient_field(&f, &g, &config).map_err(|e| e.to_string())?;

                let mut targets: Vec<(bool, usize)> = Vec::new();
                for (is_f, map) in [(true, &grad.wrt_f), (false, &grad.wrt_g)] {
                    let mut keys: Vec<usize> = map.keys().copied().collect();
                    while keys.len() > 3 {
                        let at = rng.random_range(0..keys.len());
                        keys.swap_remove(at);
                    }
                    targets.extend(keys.into_iter().map(|k| (is_f, k)));
                    for _ in 0..10 {
                        let idx = rng.random_range(0..len);
                        if !map.contains_key(&idx) {
                            targets.push((is_f, idx));
                            break;
                        }
                    }
                }
                for (is_f, idx) in targets {
                    let analytic = if is_f {
                        grad.wrt_f.get(&idx).copied().unwrap_or(0.0)
                    } else {
                        grad.wrt_g.get(&idx).copied().unwrap_or(0.0)
                    };
                    let probe = |offset: f64| -> Result<f64, String> {
                        let mut fv = f.values().to_vec();
                        let mut gv = g.values().to_vec();
                        if is_f {
                            fv[idx] += offset;
                        } else {
                            gv[idx] += offset;
                        }
                        let pf = ScalarField64::new(shape.clone(), fv).expect("field");
                        let pg = ScalarField64::new(shape.clone(), gv).expect("field");
                        Ok(sftd_field(&pf, &pg, &config)
                            .map_err(|e| e.to_string())?
                            .total)
                    };
                    let fd = (probe(eps)? - probe(-eps)?) / (2.0 * eps);
                    let rel = (fd - analytic).abs() / analytic.abs().max(1.0);
                    if rel > 1e-4 {
                        return Err(format!(
                            "shape {shape:?} trial {trial} idx {idx} (wrt {}): \
                             finite difference {fd} vs analytic {analytic}",
                            if is_f { "f" } else { "g" }
                        ));
                    }
                }
            }
        }
        Ok(())
    })();
    verdict(5, outcome);
}

#[test]
fn criterion_6_synthetic_phenomena() {
    let outcome = (|| {
        let w2_zero = 1e-12;

        // Pair one: mirrored Gaussian wells. Same barcode, different layout;
        // the divergence sees the disagreement in degree zero.
        {
            let centers_f = [vec![3usize, 4], vec![8, 11], vec![12, 5]];
            let centers_g: Vec<Vec<usize>> =
                centers_f.iter().map(|c| vec![15 - c[0], c[1]]).collect();
            let f = gaussian_minima_field::<f64>(&[16, 16], &centers_f, 1.0, 1.5)
                .map_err(|e| e.to_string())?;
            let g = gaussian_minima_field::<f64>(&[16, 16], &centers_g, 1.0, 1.5)
                .map_err(|e| e.to_string())?;
            for k in 0..=1 {
                let bf = cubical_persistence(&CubicalSpec {
                    field: &f,
                    max_dim: 1,
                })
                .map_err(|e| e.to_string())?;
                let bg = cubical_persistence(&CubicalSpec {
                    field: &g,
                    max_dim: 1,
                })
                .map_err(|e| e.to_string())?;
                let dist = wasserstein_distance(
                    &Diagram::from_barcode(&bf, k),
                    &Diagram::from_barcode(&bg, k),
                    2.0,
                )
                .map_err(|e| e.to_string())?;
                if dist > w2_zero {
                    return Err(format!(
                        "wells: plain barcodes differ at degree {k}: {dist}"
                    ));
                }
            }
            let sym = sftd_field(
                &f,
                &g,
                &SftdConfig {
                    degrees: vec![0, 1],
                    p: 1.0,
                    symmetric: true,
                },
            )
            .map_err(|e| e.to_string())?;
            if sym.per_degree[&0] <= 0.0 {
                return Err("wells: symmetric divergence vanishes at degree 0".into());
            }
            // Births localize at wells; all sites stay inside the inflated
            // bounding box of the twelve well coordinates.
            let all_centers: Vec<&Vec<usize>> = centers_f.iter().chain(&centers_g).collect();
            for (a, b) in [(&f, &g), (&g, &f)] {
                let cross = f_cross_barcode_field(a, b, 1).map_err(|e| e.to_string())?;
                for bar in cross.localize() {
                    if bar.bar.degree != 0 {
                        continue;
                    }
                    let birth = bar.birth_site.ok_or("wells: missing birth site")?;
                    let near_center = all_centers
                        .iter()
                        .any(|c| c.iter().zip(&birth).all(|(&cc, &bc)| cc.abs_diff(bc) <= 2));
                    if !near_center {
                        return Err(format!("wells: birth site {birth:?} far from every well"));
                    }
                    if let Some(death) = bar.death_site {
                        let inside = death.iter().enumerate().all(|(axis, &c)| {
                            let lo = all_centers.iter().map(|v| v[axis]).min().unwrap();
                            let hi = all_centers.iter().map(|v| v[axis]).max().unwrap();
                            c + 3 >= lo && c <= hi + 3
                        });
                        if !inside {
                            return Err(format!("wells: death site {death:?} outside hull"));
                        }
                    }
                }
            }
        }

        // Pair two: wall lattices with one defect each. Identical barcodes,
        // unit divergence in degree one, localized at the defective cell.
        {
            let cell = 3usize;
            let f = lattice_defect_field::<f64>(&[10, 10], cell, &[(0, 0)])
                .map_err(|e| e.to_string())?;
            let g = lattice_defect_field::<f64>(&[10, 10], cell, &[(2, 1)])
                .map_err(|e| e.to_string())?;
            for k in 0..=1 {
                let bf = cubical_persistence(&CubicalSpec {
                    field: &f,
                    max_dim: 1,
                })
                .map_err(|e| e.to_string())?;
                let bg = cubical_persistence(&CubicalSpec {
                    field: &g,
                    max_dim: 1,
                })
                .map_err(|e| e.to_string())?;
                let dist = wasserstein_distance(
                    &Diagram::from_barcode(&bf, k),
                    &Diagram::from_barcode(&bg, k),
                    2.0,
                )
                .map_err(|e| e.to_string())?;
                if dist > w2_zero {
                    return Err(format!(
                        "defects: plain barcodes differ at degree {k}: {dist}"
                    ));
                }
            }
            let config = SftdConfig {
                degrees: vec![0, 1],
                p: 1.0,
                symmetric: false,
            };
            let fg = sftd_field(&f, &g, &config).map_err(|e| e.to_string())?;
            let gf = sftd_field(&g, &f, &config).map_err(|e| e.to_string())?;
            if fg.per_degree[&1] != 1.0 || gf.per_degree[&1] != 1.0 {
                return Err(format!(
                    "defects: degree-1 divergence should be exactly 1, got {} / {}",
                    fg.per_degree[&1], gf.per_degree[&1]
                ));
            }
            // The only degree-1 bar localizes inside the defective cell of
            // the first argument.
            for (a, b, (ci, cj)) in [(&f, &g, (0usize, 0usize)), (&g, &f, (2, 1))] {
                let cross = f_cross_barcode_field(a, b, 1).map_err(|e| e.to_string())?;
                let bars: Vec<_> = cross
                    .localize()
                    .into_iter()
                    .filter(|bar| bar.bar.degree == 1)
                    .collect();
                if bars.len() != 1 {
                    return Err(format!(
                        "defects: expected one degree-1 bar, got {}",
                        bars.len()
                    ));
                }
                let rows = ci * cell..=(ci + 1) * cell;
                let cols = cj * cell..=(cj + 1) * cell;
                for site in [bars[0].birth_site.clone(), bars[0].death_site.clone()] {
                    let site = site.ok_or("defects: missing site")?;
                    if !(rows.contains(&site[0]) && cols.contains(&site[1])) {
                        return Err(format!("defects: site {site:?} outside cell ({ci},{cj})"));
                    }
                }
            }
        }

        // Pair three: spheres joined by a bridge on opposite sides. The
        // mirror symmetry keeps the barcodes equal; the divergence finds the
        // loop through the two bridges, localized near the bridge tube.
        {
            let grid = 16usize;
            let width = 0.09;
            let f = spheres_bridge_field::<f64>(grid, 0.08, 0.44, width, Bridge::Above)
                .map_err(|e| e.to_string())?;
            let g = spheres_bridge_field::<f64>(grid, 0.08, 0.44, width, Bridge::Below)
                .map_err(|e| e.to_string())?;
            for k in 0..=2 {
                let bf = cubical_persistence(&CubicalSpec {
                    field: &f,
                    max_dim: 2,
                })
                .map_err(|e| e.to_string())?;
                let bg = cubical_persistence(&CubicalSpec {
                    field: &g,
                    max_dim: 2,
                })
                .map_err(|e| e.to_string())?;
                let dist = wasserstein_distance(
                    &Diagram::from_barcode(&bf, k),
                    &Diagram::from_barcode(&bg, k),
                    2.0,
                )
                .map_err(|e| e.to_string())?;
                if dist > w2_zero {
                    return Err(format!(
                        "spheres: plain barcodes differ at degree {k}: {dist}"
                    ));
                }
            }
            let sym = sftd_field(
                &f,
                &g,
                &SftdConfig {
                    degrees: vec![0, 1, 2],
                    p: 1.0,
                    symmetric: true,
                },
            )
            .map_err(|e| e.to_string())?;
            if sym.per_degree[&1] <= 0.0 {
                return Err("spheres: symmetric divergence vanishes at degree 1".into());
            }
            // Both bridge tubes run along the first axis through the lattice
            // center; cross-section coordinates must stay near it.
            let center = (grid - 1) as f64 / 2.0;
            let margin = width * (grid - 1) as f64 + 1.0;
            for (a, b) in [(&f, &g), (&g, &f)] {
                let cross = f_cross_barcode_field(a, b, 1).map_err(|e| e.to_string())?;
                let bars: Vec<_> = cross
                    .localize()
                    .into_iter()
                    .filter(|bar| bar.bar.degree == 1)
                    .collect();
                if bars.is_empty() {
                    return Err("spheres: no localized degree-1 bar".into());
                }
                for bar in bars {
                    for site in [bar.birth_site, bar.death_site] {
                        let site = site.ok_or("spheres: missing site")?;
                        for &c in &site[1..] {
                            if (c as f64 - center).abs() > margin {
                                return Err(format!("spheres: site {site:?} off the bridge axis"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    verdict(6, outcome);
}

#[test]
fn criterion_8_metrics_match_enumeration() {
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xAC08);
        for trial in 0..1050 {
            let draw = |rng: &mut ChaCha8Rng| -> Vec<(f64, f64)> {
                let count = rng.random_range(0..=5);
                (0..count)
                    .map(|_| {
                        let birth = rng.random_range(0..20) as f64 * 0.25;
                        let length = rng.random_range(1..8) as f64 * 0.25;
                        (birth, birth + length)
                    })
                    .collect()
            };
            let pa = draw(&mut rng);
            let pb = draw(&mut rng);
            let a = Diagram::new(pa.clone()).map_err(|e| e.to_string())?;
            let b = Diagram::new(pb.clone()).map_err(|e| e.to_string())?;

            let direct = bottleneck_distance(&a, &b);
            let brute = brute_force(&pa, &pb, None);
            if (direct - brute).abs() > 1e-12 {
                return Err(format!(
                    "trial {trial}: bottleneck {direct} vs enumeration {brute}"
                ));
            }
            let q = [1.0, 2.0, 3.0][trial % 3];
            let direct = wasserstein_distance(&a, &b, q).map_err(|e| e.to_string())?;
            let brute = brute_force(&pa, &pb, Some(q)).powf(1.0 / q);
            if (direct - brute).abs() > 1e-12 {
                return Err(format!(
                    "trial {trial}: wasserstein-{q} {direct} vs enumeration {brute}"
                ));
            }
        }
        Ok(())
    })();
    verdict(8, outcome);
}

/// Exhaustive minimum over partial matchings. `None` gives the bottleneck
/// cost, `Some(q)` the total q-th-power transport cost (before the root).
fn brute_force(a: &[(f64, f64)], b: &[(f64, f64)], q: Option<f64>) -> f64 {
    fn level(
        at: usize,
        used: &mut Vec<bool>,
        a: &[(f64, f64)],
        b: &[(f64, f64)],
        q: Option<f64>,
    ) -> f64 {
        let combine = |x: f64, y: f64| match q {
            None => x.max(y),
            Some(_) => x + y,
        };
        let single = |p: (f64, f64)| -> f64 {
            let gap = (p.1 - p.0) / 2.0;
            match q {
                None => gap,
                Some(q) => gap.powf(q),
            }
        };
        if at == a.len() {
            let mut rest = 0.0;
            for (j, point) in b.iter().enumerate() {
                if !used[j] {
                    rest = combine(rest, single(*point));
                }
            }
            return rest;
        }
        // Unmatched: project to the diagonal.
        let mut best = combine(single(a[at]), level(at + 1, used, a, b, q));
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            let moved = (a[at].0 - b[j].0).abs().max((a[at].1 - b[j].1).abs());
            let cost = match q {
                None => moved,
                Some(q) => moved.powf(q),
            };
            used[j] = true;
            best = best.min(combine(cost, level(at + 1, used, a, b, q)));
            used[j] = false;
        }
        best
    }
    let mut used = vec![false; b.len()];
    level(0, &mut used, a, b, q)
}
