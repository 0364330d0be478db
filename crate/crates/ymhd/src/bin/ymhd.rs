fn main() {
    println!("ymhd");
}
