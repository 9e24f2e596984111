fn main() {
    // AB internal projections folded mod 1: which n-range hits all 64 cells?
    let s = std::f64::consts::FRAC_PI_4;
    let cols: Vec<[f64; 2]> = (0..4).map(|j| {
        let b = 3.0 * s * j as f64;
        [b.cos(), b.sin()]
    }).collect();
    for n in 3..=10i64 {
        let mut hit = vec![false; 64];
        for n0 in -n..=n { for n1 in -n..=n { for n2 in -n..=n { for n3 in -n..=n {
            let ns = [n0, n1, n2, n3];
            let mut cell = 0usize;
            for i in 0..2 {
                let mut v = 0.0;
                for j in 0..4 { v += cols[j][i] * ns[j] as f64; }
                let f = v - v.floor();
                cell = cell * 8 + ((f * 8.0) as usize).min(7);
            }
            hit[cell] = true;
        }}}}
        let count = hit.iter().filter(|&&h| h).count();
        println!("n_range {} -> {} / 64 cells, {} points", n, count, (2*n+1).pow(4));
    }
}
