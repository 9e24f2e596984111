use modelset_fb::*;
fn main() {
    let tau = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let l = Lattice::from_rows(&[vec![1.0, tau], vec![1.0, 1.0 - tau]]).unwrap();
    let cps = CutProjectScheme::new(l, 1).unwrap();
    let w = Window::Box(AlignedBoxWindow::cube(vec![1e6], 0.5).unwrap());
    let pts = cps.model_set_points(&w, 50.0, DEFAULT_CANDIDATE_CAP).unwrap();
    println!("{} points", pts.len());
    for p in pts.iter().take(5) {
        println!("{:?} phys {:?} int {:?}", p.coords, p.physical, p.internal);
    }
    // raw enumeration
    let phys = SupNormBox::ball(1, 50.0).unwrap();
    let region = phys.product(&w.bounding_box());
    println!("region: {:?}", region);
    let raw = cps.lattice().enumerate_in_region(&region, DEFAULT_CANDIDATE_CAP).unwrap();
    println!("raw {} points", raw.len());
    for p in raw.iter().take(5) {
        println!("  {:?} -> {:?}", p.coords, p.embedded);
    }
}
