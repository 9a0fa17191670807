use std::time::{Duration, Instant};

use cayleyham::catalog::{enumerate_groups, oracle_class_count};
use cayleyham::certificate::{parse_certificate, CertificateError};
use cayleyham::corpus::{figure, figure_ids, load_corpus, transcription_lint, LintIssue};
use cayleyham::group::{is_isomorphic, FiniteGroup, Group};
use cayleyham::hamilton::ViolationReason;

#[test]
fn every_figure_verifies_quickly() {
    let corpus = load_corpus().unwrap();
    assert_eq!(corpus.len(), 18);
    for entry in &corpus {
        let t = Instant::now();
        let report = entry.cert.verify().unwrap();
        assert!(t.elapsed() < Duration::from_secs(1), "{}", entry.id);
        assert!(report.ok, "{}: {report}", entry.id);
        assert_eq!(report.length, 150);
    }
    assert_eq!(figure_ids().count(), 18);
    assert!(figure("xv1,y").is_some());
}

#[test]
fn certificates_round_trip() {
    for entry in load_corpus().unwrap() {
        let text = entry.cert.emit();
        let again = parse_certificate(&text).unwrap();
        assert_eq!(again, entry.cert, "{}", entry.id);
        assert_eq!(again.emit(), text);
    }
}

#[test]
fn malformed_certificates() {
    let unknown = "group: Z5\ngen a = (1)\ntokens:\na a b a a\n";
    match parse_certificate(unknown) {
        Err(CertificateError::Parse { line, .. }) => assert_eq!(line, 4),
        Ok(c) => assert_eq!(c.verify().unwrap().first_violation.unwrap().reason, ViolationReason::UnknownToken),
        Err(e) => panic!("unexpected {e}"),
    }
    let empty = parse_certificate("group: Z5\ngen a = (1)\ntokens:\n").unwrap();
    assert_eq!(empty.verify().unwrap().first_violation.unwrap().reason, ViolationReason::WrongLength);
    assert!(parse_certificate("group: Z5\ngen a = (1)\n").is_err());
    assert!(parse_certificate("group: Z5 x\ngen a = (1)\ntokens:\n").is_err());
    let ok = parse_certificate("group: Z5\ngen a = (1)\ntokens:\na a a a a\n").unwrap();
    assert!(ok.verify().unwrap().ok);
}

#[test]
fn lint_flags_the_mutated_step() {
    let corpus = load_corpus().unwrap();
    assert!(transcription_lint(&corpus).ok());
    for (k, step) in [(0usize, 10usize), (5, 77), (17, 149)] {
        let mut entry = corpus[k].clone();
        // swap in a different generator, which moves the walk off the figure
        let tok = &mut entry.cert.walk.tokens[step - 1];
        tok.name = entry.cert.generators.iter().map(|(n, _)| n).find(|n| **n != tok.name).unwrap().clone();
        let report = transcription_lint(std::slice::from_ref(&entry));
        let first = report.figures[0].issues.iter().filter_map(LintIssue::step).min();
        assert_eq!(first, Some(step), "{}: {}", entry.id, report);
    }
}

#[test]
fn catalog_of_order_150() {
    let entries = enumerate_groups(150).unwrap();
    assert_eq!(entries.len(), 13);
    assert_eq!(entries.len(), oracle_class_count());
    let ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
    assert!(ids.contains(&"G150_ABELIAN_QUOT") && ids.contains(&"G150_D6"));
    let groups: Vec<Group> = entries.iter().map(|e| Group::new(e.spec.clone()).unwrap()).collect();
    for i in 0..groups.len() {
        assert_eq!(groups[i].order(), 150);
        for j in i + 1..groups.len() {
            assert!(!is_isomorphic(&groups[i], &groups[j]).unwrap(), "{} ~ {}", ids[i], ids[j]);
        }
    }
    assert!(enumerate_groups(48).is_err());
}
