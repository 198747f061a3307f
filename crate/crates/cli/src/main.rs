fn main() { println!("undec cli placeholder"); }
