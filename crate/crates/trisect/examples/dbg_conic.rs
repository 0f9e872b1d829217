fn main() {
    let t0 = std::time::Instant::now();
    match trisect::pieces::conic_diagram() {
        Ok(d) => {
            println!("conic found in {:?}: type {}", t0.elapsed(), d.infer_type().unwrap());
            let e = trisect::pieces::exterior(&d).unwrap();
            let p = trisect::gluing::monodromy_power(&e, 20_000).unwrap();
            println!("exterior power: {p}");
        }
        Err(e) => println!("conic failed after {:?}: {e}", t0.elapsed()),
    }
}
