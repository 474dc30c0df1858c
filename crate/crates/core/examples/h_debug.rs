use bracket_cover::bounds::{height_bound, improved_height_bound, f_series};
use bracket_cover::decomposer::{build_cover, height};
fn main() {
    for (d, eps) in [(1usize, 0.5f64), (1, 0.2), (1, 0.1), (2, 0.2), (3, 0.2), (4, 0.2)] {
        let stats = build_cover(d, eps, |_| {}).unwrap();
        let scalar = height(d, eps).unwrap();
        let hb = height_bound(d, eps).unwrap();
        let ihb = improved_height_bound(d, eps);
        let f = f_series(d, eps, 1e-12);
        println!("d={d} eps={eps}: measured={} scalar={scalar} bound={hb} improved={ihb:?} f={f:?}", stats.height);
    }
}
