use std::path::PathBuf;

use hombound::format::{parse_document, read_document, to_toml, Document};
use hombound::{count_homs, Error};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

#[test]
fn shipped_files_parse_and_round_trip() {
    let dir = data("");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let doc = read_document(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let canonical = to_toml(&doc).unwrap();
            let again = parse_document(&canonical, Some(&dir)).unwrap();
            assert_eq!(to_toml(&again).unwrap(), canonical, "{}", path.display());
            seen += 1;
        }
    }
    assert!(seen >= 8);
}

#[test]
fn realized_alt5_has_order_60() {
    let doc = read_document(&data("a5.realized.toml")).unwrap();
    let Document::Realized { presentation, group } = &doc else {
        panic!("expected a realized presentation");
    };
    assert_eq!(group.order_usize().unwrap(), 60);
    assert_eq!(count_homs(presentation, group).unwrap().count, 121u32.into());
}

#[test]
fn cayley_and_perm_sym3_agree() {
    let table = read_document(&data("s3.cayley.toml")).unwrap();
    let perm = hombound::library::symmetric(3);
    let pres = hombound::Presentation::cyclic(2);
    assert_eq!(
        count_homs(&pres, table.group().unwrap()).unwrap().count,
        count_homs(&pres, &perm).unwrap().count
    );
}

#[test]
fn bad_files_name_the_line() {
    let cases = [
        ("type = \"perm\"\ndegree = 3\ngenerators = [[0, 0, 1]]\n", 3, "not a bijection"),
        (
            "type = \"presentation\"\ngenerators = [\"a\"]\nrelators = [\"a^2\", \"c\"]\n",
            3,
            "undeclared generator c",
        ),
        ("type = \"cayley\"\norder = 2\ntable = [[0, 1], [0, 1]]\n", 3, ""),
        ("type = \"perm\"\ndegree = 3\n\ngenerators = [[0, 1]]\n", 4, "degree is 3"),
        ("type = \"matrix\"\nprime = 4\ndim = 1\ngenerators = [[1]]\n", 2, "prime"),
        ("type = \"perm\"\ndegree = 2\ngenerators = [[1, 0]\n", 3, ""),
    ];
    for (src, line, needle) in cases {
        match parse_document(src, None) {
            Err(Error::Parse { line: got, message }) => {
                assert_eq!(got, line, "{src:?}: {message}");
                assert!(message.contains(needle), "{message}");
            }
            other => panic!("{src:?} gave {other:?}"),
        }
    }
}
