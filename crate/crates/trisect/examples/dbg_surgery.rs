use trisect::pieces::unknot_diagram;
fn main() {
    let u = unknot_diagram().unwrap();
    println!("unknot type {:?}", u.infer_type());
    let (ext, p) = trisect::surgery::exterior_with_power(&u).unwrap();
    println!("exterior p={p} type {:?}", ext.infer_type());
    let piece = trisect::pieces::b3s1().unwrap();
    let out = trisect::gluing::glue_unchecked(&ext, &piece).unwrap();
    println!("glued type {:?} kind {:?}", out.infer_type(), out.kind);
    println!("h1 {:?}", trisect::invariants::homology_h1(&out));
}
