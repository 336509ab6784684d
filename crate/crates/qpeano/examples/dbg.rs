use qpeano::*;
fn main() {
    let q = QParam64::new(1.5).unwrap();
    let a = 1.2291129545647737f64;
    let x = a * (1.0 + 0.4302793465114074);
    let f = FunctionSpec64::polynomial(vec![0.0, 0.0, 0.0, 0.0, 1.5904459049440391]);
    let c = IntegralConfig64::default();
    let e = q_taylor_expand(&f, a, 3, q).unwrap();
    let r = q_taylor_remainder(&f, a, x, 3, q, &c).unwrap();
    let direct = f.evaluate(x);
    println!("coeffs    {:?}", e.coefficients());
    println!("expansion {}", e.eval(x));
    println!("remainder {}", r);
    println!("total     {}", e.eval(x) + r);
    println!("direct    {}", direct);
    println!("defect    {}", e.eval(x) + r - direct);
}
