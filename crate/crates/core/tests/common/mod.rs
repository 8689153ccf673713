//! Checks shared by the property suites and the acceptance run. Each
//! returns a description of the first failure.

#![allow(dead_code)]

use fplmap::analysis::{k_series, solve_shift, Parity, Precision, RealSeries};
use fplmap::arch_state::EncodedState;
use fplmap::cli::{reference_series, reference_table};
use fplmap::exact::{fuss_catalan, g_sum_check, rigid4_g, rigid_z};
use fplmap::transfer::{
    brute_force_z, full_y, full_z, y_of, z_of, EngineOptions, Observable, OneSidedPropagator,
};
use fplmap::{Color, FamilySpec};
use num_bigint::BigUint;

pub type Check = Result<(), String>;

pub const SMOKE_FAMILIES: &[&str] = &[
    "regular:3",
    "regular:4",
    "regular:5",
    "regular:6",
    "regular:7",
    "mixed:2=1,3=1",
    "mixed:3=1,4=1",
    "rigid:4",
    "rigid:6",
];

pub fn family(s: &str) -> FamilySpec {
    s.parse().expect("valid family")
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: impl FnOnce() -> String, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{}: got {got:?}, want {want:?}", what()))
    }
}

/// Depth-first enumeration against the transfer engine.
pub fn oracle_equivalence(n_max: usize) -> Check {
    for name in SMOKE_FAMILIES {
        let f = family(name);
        for n in 1..=n_max {
            let brute = brute_force_z(&f, n).map_err(|e| e.to_string())?;
            let transfer = z_of(&f, n).map_err(|e| e.to_string())?;
            expect_eq(
                || format!("{name} N={n} transfer vs brute force"),
                transfer,
                brute,
            )?;
        }
    }
    Ok(())
}

/// Largest `N` for the full (unreduced) propagation of each family.
pub fn full_cap(name: &str) -> usize {
    match name {
        "regular:5" => 6,
        "regular:6" => 5,
        "regular:7" => 4,
        _ => 8,
    }
}

/// Mirror-reduced half propagation against the full `2N`-vertex run.
pub fn half_full_consistency() -> Check {
    let options = EngineOptions::default();
    for name in SMOKE_FAMILIES {
        let f = family(name);
        for n in 1..=full_cap(name) {
            let err = |e: fplmap::TransferError| e.to_string();
            expect_eq(
                || format!("{name} z_{n} half vs full"),
                z_of(&f, n).map_err(err)?,
                full_z(&f, n, options).map_err(err)?,
            )?;
            expect_eq(
                || format!("{name} y_{n} half vs full"),
                y_of(&f, n).map_err(err)?,
                full_y(&f, n, options).map_err(err)?,
            )?;
        }
    }
    Ok(())
}

/// Zero weights drop a valency; a single weight `w` scales `z_N` by `w^(2N)`.
pub fn degenerate_weights(n_max: usize) -> Check {
    let pairs = [
        ("mixed:3=1,4=0", "regular:3"),
        ("mixed:2=0,4=1", "regular:4"),
        ("mixed:3=1", "regular:3"),
    ];
    for (mixed, regular) in pairs {
        for n in 1..=n_max {
            let (m, r) = (family(mixed), family(regular));
            expect_eq(|| format!("{mixed} z_{n}"), z_of(&m, n).ok(), z_of(&r, n).ok())?;
            expect_eq(|| format!("{mixed} y_{n}"), y_of(&m, n).ok(), y_of(&r, n).ok())?;
        }
    }
    for n in 1..=n_max {
        let scaled = z_of(&family("mixed:3=2"), n).ok();
        let base = z_of(&family("regular:3"), n).ok().map(|z| z << (2 * n));
        expect_eq(|| format!("mixed:3=2 z_{n}"), scaled, base)?;
    }
    Ok(())
}

/// Every stack up to `depth` survives encode/decode, and push/pop invert.
pub fn stack_round_trips(depth: u32) -> Check {
    for s in 0..=depth {
        for bits in 0u64..(1 << s) {
            let colors: Vec<Color> = (0..s)
                .map(|j| {
                    if bits >> j & 1 == 1 {
                        Color::White
                    } else {
                        Color::Black
                    }
                })
                .collect();
            let state = EncodedState::from_colors(&colors).map_err(|e| e.to_string())?;
            expect_eq(|| format!("stack {colors:?}"), state.colors(), colors.clone())?;
            expect_eq(|| format!("depth of {colors:?}"), state.depth(), s)?;
            for c in [Color::Black, Color::White] {
                let pushed = state.push(c).map_err(|e| e.to_string())?;
                expect_eq(
                    || format!("pop after push on {colors:?}"),
                    pushed.pop_expect(c),
                    Some(state),
                )?;
                expect_eq(
                    || format!("wrong-color pop on {colors:?}"),
                    pushed.pop_expect(c.opposite()),
                    None,
                )?;
            }
        }
    }
    Ok(())
}

/// Transfer against the Fuss-Catalan forms, plus the one-sided sum rules.
pub fn rigid_closed_forms(n_max: usize, identities_to: u64) -> Check {
    for (name, q) in [("rigid:4", 2), ("rigid:6", 3)] {
        let f = family(name);
        for n in 1..=n_max {
            expect_eq(
                || format!("{name} z_{n}"),
                z_of(&f, n).ok(),
                Some(rigid_z(q, n as u64)),
            )?;
        }
    }
    let f = family("rigid:4");
    for n in 1..=n_max {
        let want = rigid4_g(n as u64) * fuss_catalan(2, n as u64) * 2u32;
        expect_eq(|| format!("rigid:4 y_{n} = 2 g c"), y_of(&f, n).ok(), Some(want))?;
    }
    let mut one_sided = OneSidedPropagator::new(2).map_err(|e| e.to_string())?;
    for n in 1..=identities_to {
        let step = one_sided.advance().map_err(|e| e.to_string())?;
        expect_eq(|| format!("one-sided g_{n}"), step.g.clone(), rigid4_g(n))?;
        expect_eq(|| format!("one-sided c_{n}"), step.c, fuss_catalan(2, n))?;
    }
    for m in 1..=identities_to / 2 {
        expect_eq(|| format!("g sum rule M={m}"), g_sum_check(m), rigid4_g(2 * m))?;
    }
    Ok(())
}

/// Every published `g_N` of the rigid 6-regular table from the one-sided transfer.
pub fn rigid6_g_table(n_max: usize) -> Check {
    let table = reference_table("rigid6_g").expect("bundled");
    let mut prop = OneSidedPropagator::new(3).map_err(|e| e.to_string())?;
    for (i, want) in table.g.iter().take(n_max).enumerate() {
        let got = prop.advance().map_err(|e| e.to_string())?.g;
        expect_eq(|| format!("rigid:6 g_{}", i + 1), &got, want)?;
    }
    Ok(())
}

/// Quadratics vanish under the third difference at working precision.
pub fn third_difference_annihilation() -> Check {
    let p = Precision::new(60).map_err(|e| e.to_string())?;
    for (a, b, c) in [(1i64, 0i64, 0i64), (-7, 3, 11), (1000, -999, 5)] {
        let values: Vec<_> = (1..=12i64)
            .map(|n| p.f64((a * n * n + b * n + c) as f64) / p.int(3))
            .collect();
        let quad = RealSeries::contiguous(1, values);
        let hat = fplmap::analysis::accel_tilde(
            &RealSeries::new(
                quad.iter()
                    .map(|(n, v)| (n, v / p.int((n as u64).pow(3))))
                    .collect(),
            ),
            &p,
        )
        .map_err(|e| e.to_string())?;
        for (n, v) in hat.iter() {
            let v = fplmap::analysis::to_f64(v);
            if v.abs() > 1e-40 {
                return Err(format!("third difference of {a}n^2+{b}n+{c} at {n}: {v}"));
            }
        }
    }
    Ok(())
}

/// The shift solution for the bundled 3-regular series at two precisions.
pub fn precision_stability(digits: usize) -> Check {
    let file = reference_series(&reference_table("regular3").expect("bundled"));
    let z = file.series(Observable::Z).map_err(|e| e.to_string())?;
    let y = file.series(Observable::Y).map_err(|e| e.to_string())?;
    let solve = |digits| -> Result<(f64, f64), String> {
        let p = Precision::new(digits).map_err(|e| e.to_string())?;
        let k = k_series(&z, &y, &p).map_err(|e| e.to_string())?;
        let s = solve_shift(&k, Parity::Even, 26, &p).map_err(|e| e.to_string())?;
        Ok((s.s_star, s.nu))
    };
    let (a, b) = (solve(60)?, solve(digits)?);
    if (a.0 - b.0).abs() > 1e-9 || (a.1 - b.1).abs() > 1e-12 {
        return Err(format!("60 digits give {a:?}, {digits} digits give {b:?}"));
    }
    Ok(())
}

pub fn big(v: u64) -> BigUint {
    BigUint::from(v)
}
