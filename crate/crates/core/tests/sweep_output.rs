use unruh_channels::sweep::csv::{emit_csv, write_csv};
use unruh_channels::sweep::{parse_config, run_sweep, SweepTable, Value};

fn table(line: &str) -> SweepTable {
    run_sweep(&parse_config(line.split_whitespace()).unwrap()).unwrap()
}

fn csv_bytes(t: &SweepTable) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(t, &mut buf).unwrap();
    buf
}

#[test]
fn repeated_runs_are_byte_identical() {
    let line = "--family pure --p-range 0:1:9 --lock-acc --grid 9 --measures concurrence,fidelity,telp,purity,separability";
    assert_eq!(csv_bytes(&table(line)), csv_bytes(&table(line)));
}

#[test]
fn csv_round_trip_recovers_twelve_digits() {
    let t = table("--family gwerner --cxx 0.7 --cyy 0.5 --czz -0.3 --grid 7");
    let bytes = csv_bytes(&t);
    let mut reader = csv::Reader::from_reader(bytes.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["r_a", "r_b", "cxx", "cyy", "czz", "region", "concurrence", "fidelity", "telp", "purity"]
    );
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), t.rows.len());
    let close = |text: &str, v: f64| {
        let back: f64 = text.parse().unwrap();
        (back - v).abs() <= v.abs() * 5e-12 + 1e-300
    };
    for (rec, row) in records.iter().zip(&t.rows) {
        assert!(close(&rec[0], row.r_a) && close(&rec[1], row.r_b));
        for (k, p) in row.params.iter().enumerate() {
            assert!(close(&rec[2 + k], *p));
        }
        assert_eq!(&rec[5], row.region.to_string());
        for (k, v) in row.values.iter().enumerate() {
            let Value::Real(v) = v else { unreachable!() };
            assert!(close(&rec[6 + k], *v), "{} vs {v}", &rec[6 + k]);
        }
    }
}

#[test]
fn file_output_matches_buffer() {
    let t = table("--family werner --x 0.6 --grid 2 --region I-I");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    emit_csv(&t, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.as_bytes(), csv_bytes(&t).as_slice());
    assert_eq!(text.lines().count(), 1 + 4);
    assert!(text.ends_with('\n'));
    assert!(text.starts_with("r_a,r_b,x,region,concurrence,fidelity,telp,purity\n"));
}

#[test]
fn grid_endpoints_are_literal() {
    let t = table("--family bell --grid 5 --region I-I --measures purity");
    let last = t.rows.last().unwrap();
    assert_eq!(t.rows[0].r_a, 0.0);
    assert_eq!(last.r_a, std::f64::consts::FRAC_PI_4);
    assert_eq!(last.r_b, std::f64::consts::FRAC_PI_4);
    let text = String::from_utf8(csv_bytes(&t)).unwrap();
    assert!(text.lines().last().unwrap().starts_with("0.785398163397,0.785398163397,"));
}
