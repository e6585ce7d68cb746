use nalgebra::DMatrix;
fn main() {
    let m = DMatrix::<f64>::zeros(3, 3);
    println!("about to eigen...");
    let e = m.complex_eigenvalues();
    println!("done {e:?}");
}
