use trisect::cellmap::Family;
fn main() {
    let e = trisect::pieces::b3s1().unwrap();
    println!("b3s1: {:?}", e.map.genus_boundary());
    for cap in e.map.cap_faces() {
        let mut desc = vec![];
        for &x in &cap {
            let v = e.map.vertex_id(x);
            let mut y = v;
            let mut att = vec![];
            loop {
                if e.map.label(y).family != Family::Boundary {
                    att.push(format!("{:?}:{}", e.map.label(y).family, e.map.label(y).component));
                }
                y = e.map.sigma(y);
                if y == v { break; }
            }
            desc.push(att.join("+"));
        }
        println!("  circle {}: [{}]", e.map.label(cap[0]).component, desc.join(", "));
    }
    let plan = trisect::gluing::canonical_plan(&e.map, &e.map).unwrap();
    println!("plan: {:?}", plan.circle_pairs);
    let glued = trisect::gluing::glue_maps(&e.map, &e.map, &plan).unwrap();
    println!("glued: V={} E={} F={} chi={} genus={:?}",
        glued.vertices().len(), glued.dart_count()/2, glued.faces().len(),
        glued.euler_characteristic(), glued.genus_boundary());
}
