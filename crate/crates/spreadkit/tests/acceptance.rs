//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use spreadkit::bounds::{
    exact_value, lower_bound, theta_floor, upper_bound, upper_bound_rules, Rule,
};
use spreadkit::codes::{mrd_full_rank_code, mrd_size, multi_component};
use spreadkit::search::{max_partial_spread, SearchLimits};
use spreadkit::verify::{hyperplane_spectrum, verify_spread};
use spreadkit::{
    forbidden_partition_check, min_rank_distance, solve_standard_equations, ForbiddenVariant,
};

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn criterion(id: u32, description: &str, run: impl FnOnce() -> Result<String, String>) {
    match run() {
        Ok(detail) => println!("criterion {id}: PASS - {description} ({detail})"),
        Err(reason) => {
            println!("criterion {id}: FAIL - {description}: {reason}");
            panic!("criterion {id} failed: {reason}");
        }
    }
}

fn ensure(cond: bool, message: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.to_string())
    }
}

#[test]
fn criterion_01_construction_optimality_r2() {
    criterion(1, "multi-component construction is exact at q=2, r=2", || {
        let start = Instant::now();
        // The CLI path at (2,10,4): construct, then verify the file.
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let path = dir.path().join("s.json");
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_spreadkit"))
            .args(["construct", "--q", "2", "--n", "10", "--k", "4"])
            .args(["--method", "multi-component", "--out"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), "construct exits 0")?;
        let text = String::from_utf8_lossy(&out.stdout).into_owned();
        ensure(text.contains("codewords: 65"), "construct reports 65 codewords")?;
        let constructed = spreadkit::SpreadFile::read(&path)
            .and_then(|f| f.to_code(true))
            .map_err(|e| e.to_string())?;
        ensure(constructed.len() == 65, "spread file holds 65 codewords")?;

        for (n, k, expected_size, expected_holes) in
            [(10u32, 4u32, 65usize, 48u64), (12, 5, 129, 96)]
        {
            let code = multi_component(2, n, k).map_err(|e| e.to_string())?;
            ensure(code.len() == expected_size, &format!("size at ({n},{k})"))?;
            let report = verify_spread(&code);
            ensure(report.valid, &format!("validity at ({n},{k})"))?;
            ensure(
                report.min_subspace_distance == Some(2 * k),
                &format!("distance at ({n},{k})"),
            )?;
            ensure(
                report.hole_count == Some(big(expected_holes)),
                &format!("holes at ({n},{k})"),
            )?;
            let exact = exact_value(2, n, k).map_err(|e| e.to_string())?;
            ensure(
                exact == Some((big(expected_size as u64), Rule::BinaryR2)),
                &format!("exact value at ({n},{k})"),
            )?;
        }
        let elapsed = start.elapsed();
        ensure(elapsed.as_secs_f64() < 10.0, "runtime under 10 s")?;
        Ok(format!(
            "65 codewords, 48 holes at (2,10,4); 129 = 2^7+1 at (2,12,5); {:.2}s",
            elapsed.as_secs_f64()
        ))
    });
}

#[test]
fn criterion_02_k3_family() {
    criterion(2, "q=2, k=3 family is exact for n = 6..12", || {
        let table = spreadkit::bounds_table(&[2], 3..=3, 6..=12).map_err(|e| e.to_string())?;
        ensure(table.len() == 7, "one record per n")?;
        for record in &table {
            let n = record.n;
            let m = n / 3;
            let expected = match n % 3 {
                0 => (big(2).pow(3 * m) - BigUint::one()) / big(7),
                1 => (big(2).pow(3 * m + 1) - big(9)) / big(7),
                _ => (big(2).pow(3 * m + 2) - big(18)) / big(7),
            };
            ensure(record.exact.as_ref() == Some(&expected), &format!("exact value at n={n}"))?;
        }
        let record = table.iter().find(|r| r.n == 8).expect("n=8 in range");
        ensure(record.exact == Some(big(34)), "A_2(8,6;3) = 34")?;
        ensure(record.exact_rule == Some(Rule::BinaryK3), "provenance of the 34")?;
        let code = multi_component(2, 8, 3).map_err(|e| e.to_string())?;
        ensure(code.len() == 33, "multi-component builds 33")?;
        let report = verify_spread(&code);
        ensure(report.valid && report.min_subspace_distance == Some(6), "the 33 verifies")?;
        let construction = spreadkit::bounds::lower_bound_rules(2, 8, 3)
            .map_err(|e| e.to_string())?
            .into_iter()
            .find(|(rule, _)| *rule == Rule::MultiComponent)
            .ok_or("multi-component rule missing")?;
        ensure(construction.1 == big(33), "provenance of the 33")?;
        Ok("values (2^{3m}-1)/7, (2^{3m+1}-9)/7, (2^{3m+2}-18)/7; 34 exact vs 33 constructed".into())
    });
}

#[test]
fn criterion_03_theta_bound_reproduction() {
    criterion(3, "theta bound alone vs registered special rules", || {
        let rules = upper_bound_rules(2, 10, 4).map_err(|e| e.to_string())?;
        let theta = rules
            .iter()
            .find(|(r, _)| *r == Rule::Theta)
            .ok_or("theta rule missing")?;
        ensure(theta.1 == big(66), "theta alone gives 66 at (2,10,4)")?;
        let (upper, rule) = upper_bound(2, 10, 4).map_err(|e| e.to_string())?;
        ensure(upper == big(65) && rule == Rule::BinaryR2, "tightened to 65")?;
        let (upper, rule) = upper_bound(2, 11, 4).map_err(|e| e.to_string())?;
        ensure(upper == big(133) && rule == Rule::Theta, "upper 133 at (2,11,4)")?;
        let (lower, _) = lower_bound(2, 11, 4).map_err(|e| e.to_string())?;
        ensure(lower == big(129), "lower 129 at (2,11,4)")?;
        Ok("66 -> 65 at (2,10,4); 129 <= A_2(11,8;4) <= 133".into())
    });
}

#[test]
fn criterion_04_theta_closed_form_grid() {
    criterion(4, "floor(theta) = floor((q^r-2)/2) on the full grid", || {
        let start = Instant::now();
        let mut checked = 0u32;
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for r in 1..=4u32 {
                for k in (2 * r)..=(2 * r + 8) {
                    let expected = (big(q).pow(r) - big(2)) / big(2);
                    let got = theta_floor(q, k, r).map_err(|e| e.to_string())?;
                    ensure(got == expected, &format!("mismatch at q={q}, r={r}, k={k}"))?;
                    checked += 1;
                }
            }
        }
        let elapsed = start.elapsed();
        ensure(elapsed.as_secs_f64() < 1.0, "runtime under 1 s")?;
        Ok(format!("{checked} grid points, zero mismatches, {:.3}s", elapsed.as_secs_f64()))
    });
}

#[test]
fn criterion_05_q3_improvement() {
    criterion(5, "the q=3, r=2 rule improves the theta bound by one", || {
        let (upper, rule) = upper_bound(3, 10, 4).map_err(|e| e.to_string())?;
        ensure(upper == big(733) && rule == Rule::TernaryR2, "upper 733")?;
        let (lower, _) = lower_bound(3, 10, 4).map_err(|e| e.to_string())?;
        ensure(lower == big(730), "lower 730")?;
        let rules = upper_bound_rules(3, 10, 4).map_err(|e| e.to_string())?;
        let theta = rules
            .iter()
            .find(|(r, _)| *r == Rule::Theta)
            .ok_or("theta rule missing")?;
        ensure(theta.1 == big(734), "theta alone gives 734")?;
        Ok("730 <= A_3(10,8;4) <= 733, theta alone 734".into())
    });
}

#[test]
fn criterion_06_standard_equations() {
    criterion(6, "standard equations for A_2(8,6;3) = 34", || {
        let profiles = [(2u64, 17u64), (3, 13), (4, 9), (5, 5)];
        let sol =
            solve_standard_equations(8, 3, 2, 34, &profiles, Some(5)).map_err(|e| e.to_string())?;
        ensure(sol.free_vars == vec![3], "a_5 is the free variable")?;
        let coeff = |r: &BigRational| -> i64 { r.to_integer().to_i64().unwrap_or(i64::MIN) };
        ensure(
            coeff(&sol.general[0].constant) == 51 && coeff(&sol.general[0].free_coeffs[0]) == -1,
            "a_2 = 51 - a_5",
        )?;
        ensure(
            coeff(&sol.general[1].constant) == -136 && coeff(&sol.general[1].free_coeffs[0]) == 3,
            "a_3 = 3 a_5 - 136",
        )?;
        ensure(
            coeff(&sol.general[2].constant) == 340 && coeff(&sol.general[2].free_coeffs[0]) == -3,
            "a_4 = 340 - 3 a_5",
        )?;
        ensure(
            sol.free_range == Some((BigInt::from(46), BigInt::from(51))),
            "46 <= a_5 <= 51",
        )?;
        let mut filtered = sol.span_filtered.clone().ok_or("span filter missing")?;
        filtered.sort();
        let mut expected: Vec<Vec<BigUint>> =
            [[0u64, 17, 187, 51], [1, 14, 190, 50], [3, 8, 196, 48]]
                .iter()
                .map(|row| row.iter().map(|&v| big(v)).collect())
                .collect();
        expected.sort();
        ensure(filtered == expected, "exactly the three spectra")?;
        Ok("a_2=51-a_5, a_3=3a_5-136, a_4=340-3a_5; 46<=a_5<=51; 3 spectra".into())
    });
}

#[test]
fn criterion_07_forbidden_partition_certificates() {
    criterion(7, "forbidden partition types certified on the grids", || {
        let mut count = 0u32;
        for k in 4..=10u32 {
            for t in 1..=3u32 {
                let cert = forbidden_partition_check(2, k, t, ForbiddenVariant::Q2Lemma)
                    .map_err(|e| e.to_string())?;
                let implied = cert.implied_total_holes.clone().ok_or("no implied total")?;
                let available = BigRational::from(BigInt::from(cert.available_holes.clone()));
                ensure(implied > available, &format!("strict ordering at q=2, k={k}, t={t}"))?;
                ensure(cert.certified, &format!("certified at q=2, k={k}, t={t}"))?;
                count += 1;
            }
        }
        for q in [3u64, 5] {
            for k in 4..=8u32 {
                for t in 1..=3u32 {
                    let cert = forbidden_partition_check(q, k, t, ForbiddenVariant::OddQLemma)
                        .map_err(|e| e.to_string())?;
                    let implied = cert.implied_total_holes.clone().ok_or("no implied total")?;
                    let available = BigRational::from(BigInt::from(cert.available_holes.clone()));
                    ensure(implied > available, &format!("strict ordering at q={q}, k={k}, t={t}"))?;
                    ensure(cert.certified, &format!("certified at q={q}, k={k}, t={t}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} certificates, all strictly ordered"))
    });
}

#[test]
fn criterion_08_oracle_agreement() {
    criterion(8, "brute-force oracle agrees with the exact values", || {
        let start = Instant::now();
        let mut details = Vec::new();
        for (q, n, k, expected) in
            [(2u64, 4u32, 2u32, 5usize), (2, 5, 2, 9), (2, 6, 3, 9), (2, 6, 2, 21)]
        {
            let result =
                max_partial_spread(q, n, k, &SearchLimits::default()).map_err(|e| e.to_string())?;
            ensure(result.proved_optimal, &format!("proof at ({q},{n},{k})"))?;
            ensure(result.best_size == expected, &format!("size at ({q},{n},{k})"))?;
            let report = verify_spread(&result.witness);
            ensure(report.valid, &format!("witness validity at ({q},{n},{k})"))?;
            let exact = exact_value(q, n, k)
                .map_err(|e| e.to_string())?
                .ok_or("exact value missing")?;
            ensure(exact.0 == big(expected as u64), &format!("formula match at ({q},{n},{k})"))?;
            details.push(format!("({q},{n},{k})={expected}"));
        }
        let elapsed = start.elapsed();
        ensure(elapsed.as_secs() < 300, "runtime under 5 min")?;
        Ok(format!("{}; {:.2}s", details.join(" "), elapsed.as_secs_f64()))
    });
}

#[test]
fn criterion_09_mrd_properties() {
    criterion(9, "MRD sizes and rank distances", || {
        let start = Instant::now();
        for (q, k, m) in [(2u64, 2u32, 3u32), (2, 3, 4), (2, 4, 6), (3, 2, 3)] {
            let code = mrd_full_rank_code(q, k, m).map_err(|e| e.to_string())?;
            ensure(
                BigUint::from(code.len()) == mrd_size(q, k, m, k),
                &format!("size at ({q},{k},{m})"),
            )?;
            ensure(
                min_rank_distance(&code) == Some(k),
                &format!("rank distance at ({q},{k},{m})"),
            )?;
        }
        let elapsed = start.elapsed();
        ensure(elapsed.as_secs() < 60, "runtime under 1 min")?;
        Ok(format!("4 parameter sets, exhaustive pairwise checks, {:.2}s", elapsed.as_secs_f64()))
    });
}

#[test]
fn criterion_10_incidence_identities() {
    criterion(10, "hyperplane incidence identities", || {
        for (n, k) in [(8u32, 3u32), (10, 4)] {
            let code = multi_component(2, n, k).map_err(|e| e.to_string())?;
            let spectrum = hyperplane_spectrum(&code).map_err(|e| e.to_string())?;
            let report = verify_spread(&code);
            let holes = report
                .hole_count
                .as_ref()
                .and_then(|h| h.to_u64())
                .ok_or("hole count")?;
            let m = code.len() as u64;
            let points = |d: u32| -> u64 { 2u64.pow(d) - 1 };
            ensure(
                spectrum.records.len() as u64 == points(n),
                &format!("hyperplane count at ({n},{k})"),
            )?;
            let contained: u64 = spectrum.records.iter().map(|r| r.contained as u64).sum();
            ensure(contained == m * points(n - k), &format!("codeword flags at ({n},{k})"))?;
            let hole_flags: u64 = spectrum.records.iter().map(|r| r.holes_on as u64).sum();
            ensure(hole_flags == holes * points(n - 1), &format!("hole flags at ({n},{k})"))?;
            let pair_flags: u64 = spectrum
                .records
                .iter()
                .map(|r| (r.contained * r.contained.saturating_sub(1) / 2) as u64)
                .sum();
            ensure(
                pair_flags == m * (m - 1) / 2 * points(n - 2 * k),
                &format!("pair flags at ({n},{k})"),
            )?;
        }
        Ok("all identities exact on (2,8,3) and (2,10,4)".into())
    });
}
