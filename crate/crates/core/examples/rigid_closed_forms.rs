//! Rigid 2q-regular maps: the transfer engine against the Fuss-Catalan
//! closed forms, and the large-N constants.

use fplmap::exact::{fuss_catalan, rigid4_g, rigid4_k, rigid_asymptotics, rigid_z};
use fplmap::transfer::{y_of, z_of};
use fplmap::FamilySpec;
use num_traits::ToPrimitive;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [2u32, 3] {
        let family = FamilySpec::rigid(2 * q)?;
        println!("{family}: z_N = c_N^2 with c_N = C({q}N, N) / ({}N + 1)", q - 1);
        for n in 1..=8usize {
            let z = z_of(&family, n)?;
            let c = fuss_catalan(q, n as u64);
            assert_eq!(z, rigid_z(q, n as u64));
            println!("  N = {n}: c_N = {c}, z_N = {z}");
        }
        let a = rigid_asymptotics(q);
        println!(
            "  z_N ~ {:.6} * {:.6}^(2N) * N^{}\n",
            a.varkappa,
            a.mu_f64(),
            a.gamma - 2
        );
    }

    let family = FamilySpec::rigid(4)?;
    println!("rigid:4 contacts, k_N = y_N / z_N = 2 g_N / c_N");
    for n in [1u64, 2, 3, 4, 5, 10, 20, 40] {
        let k = rigid4_k(n);
        if n <= 10 {
            let y = y_of(&family, n as usize)?;
            assert_eq!(y, rigid4_g(n) * fuss_catalan(2, n) * 2u32);
        }
        let approx = 4.0 * (n as f64 / std::f64::consts::PI).sqrt() - 2.0;
        println!(
            "  N = {n:>2}: k_N = {k} ~ {:.5} (4 sqrt(N/pi) - 2 = {approx:.5})",
            k.to_f64().unwrap()
        );
    }
    Ok(())
}
