fn main() {
    let p = incbessel::Parameters::new(10.0, 5.0, 0.0).unwrap();
    for n in [4usize, 8, 16, 32] {
        let t = incbessel::legacy::legacy_trajectory(n, &p);
        println!("ops({n}) = {}", t.ops);
    }
}
