//! Stratified success tables as CSV: `stratum,successA,totalA,successB,totalB`.

use twospace_core::paradox::{StratifiedTable, Stratum};

use crate::error::CliError;

pub const HEADER: [&str; 5] = ["stratum", "successA", "totalA", "successB", "totalB"];

pub fn parse_table(text: &str) -> Result<StratifiedTable, CliError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| CliError::Parse(e.to_string()))?;
    if header.iter().ne(HEADER) {
        return Err(CliError::Parse(format!("expected header {}", HEADER.join(","))));
    }
    let mut strata = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Parse(e.to_string()))?;
        let count = |i: usize| {
            record[i]
                .parse::<u64>()
                .map_err(|_| CliError::Parse(format!("{}: bad count {:?}", HEADER[i], &record[i])))
        };
        strata.push(Stratum {
            name: record[0].to_string(),
            success_a: count(1)?,
            total_a: count(2)?,
            success_b: count(3)?,
            total_b: count(4)?,
        });
    }
    Ok(StratifiedTable { strata })
}

pub fn table_to_csv(t: &StratifiedTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for s in &t.strata {
        w.write_record([
            s.name.clone(),
            s.success_a.to_string(),
            s.total_a.to_string(),
            s.success_b.to_string(),
            s.total_b.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use twospace_core::reference::kidney_stones;

    #[test]
    fn round_trip() {
        let t = kidney_stones();
        assert_eq!(parse_table(&table_to_csv(&t)).unwrap(), t);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_table("a,b,c,d,e\n").is_err());
        assert!(parse_table("stratum,successA,totalA,successB,totalB\nx,1,2,3\n").is_err());
        assert!(parse_table("stratum,successA,totalA,successB,totalB\nx,1,2,-3,4\n").is_err());
    }
}
