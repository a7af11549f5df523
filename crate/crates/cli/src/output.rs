use std::io::Write;

use qpe_core::ShotHistogram;

use crate::experiment::{ExperimentReport, OutputFormat};

pub fn emit_report(report: &ExperimentReport, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        OutputFormat::Csv => emit_csv(report),
    }
}

fn emit_csv(report: &ExperimentReport) -> Vec<u8> {
    let mut w = Vec::new();
    line(&mut w, format_args!("bitstring,count,probability"));
    if let Some(hist) = &report.histogram {
        write_rows(&mut w, hist);
    }
    for round in report.kitaev.iter().flatten() {
        for (label, hist) in [("cos", &round.cos), ("sin", &round.sin)] {
            comment(&mut w, format_args!("k={} circuit={label}", round.k));
            write_rows(&mut w, hist);
        }
        comment(
            &mut w,
            format_args!(
                "k={} c_hat={} s_hat={} estimate={} stderr={}",
                round.k, round.c_hat, round.s_hat, round.estimate, round.stderr
            ),
        );
    }

    let d = &report.decoded;
    comment(&mut w, format_args!("decoded={}", d.bits));
    comment(&mut w, format_args!("value={}", d.value));
    comment(&mut w, format_args!("correct_prob={}", report.correct_prob));
    comment(
        &mut w,
        format_args!(
            "gate_counts total={} controlled={}",
            report.gate_counts.total, report.gate_counts.controlled
        ),
    );
    comment(&mut w, format_args!("depth={}", report.depth));
    if let Some(acc) = &report.per_digit_accuracy {
        let per: Vec<String> = acc.per_digit.iter().map(f64::to_string).collect();
        comment(
            &mut w,
            format_args!("per_digit_accuracy={} mean={}", per.join(";"), acc.mean),
        );
    }
    if let Some(ms) = report.wall_time_ms {
        comment(&mut w, format_args!("wall_time_ms={ms}"));
    }
    w
}

fn write_rows(w: &mut Vec<u8>, hist: &ShotHistogram) {
    for (bits, &count) in &hist.counts {
        let p = count as f64 / hist.shots as f64;
        line(w, format_args!("{bits},{count},{p}"));
    }
}

fn comment(w: &mut Vec<u8>, text: std::fmt::Arguments<'_>) {
    line(w, format_args!("# {text}"));
}

fn line(w: &mut Vec<u8>, text: std::fmt::Arguments<'_>) {
    writeln!(w, "{text}").expect("writing to a Vec cannot fail");
}
