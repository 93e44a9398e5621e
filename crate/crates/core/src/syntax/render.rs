use super::Formula;

// Binding strength: 0 = implication, 1 = conjunction, 2 = postfix, 3 = atom.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => 0,
        Formula::Conj(..) => 1,
        Formula::Half(_) => 2,
        _ => 3,
    }
}

fn write_at(out: &mut String, f: &Formula, min: u8) {
    if level(f) < min {
        out.push('(');
        write(out, f);
        out.push(')');
    } else {
        write(out, f);
    }
}

fn write(out: &mut String, f: &Formula) {
    match f {
        Formula::Zero => out.push('0'),
        Formula::One => out.push('1'),
        Formula::Var(v) => out.push_str(v),
        Formula::Imp(a, b) => {
            write_at(out, a, 1);
            out.push_str(" -o ");
            write_at(out, b, 0);
        }
        Formula::Conj(a, b) => {
            write_at(out, a, 1);
            out.push_str(" * ");
            write_at(out, b, 2);
        }
        Formula::Half(a) => {
            write_at(out, a, 2);
            out.push_str("/2");
        }
    }
}

pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(&mut out, f);
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse_formula;
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(
            render_formula(&Formula::imp(v("P"), Formula::imp(v("Q"), v("P")))),
            "P -o Q -o P"
        );
        assert_eq!(
            render_formula(&Formula::conj(Formula::half(v("P")), v("Q"))),
            "P/2 * Q"
        );
        assert_eq!(
            render_formula(&Formula::half(Formula::conj(v("P"), v("Q")))),
            "(P * Q)/2"
        );
        assert_eq!(
            render_formula(&Formula::imp(Formula::imp(v("P"), v("Q")), v("Q"))),
            "(P -o Q) -o Q"
        );
        assert_eq!(
            render_formula(&Formula::conj(v("P"), Formula::conj(v("Q"), v("R")))),
            "P * (Q * R)"
        );
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::Zero),
            Just(Formula::One),
            "[PQR][a-z0-9_]{0,2}".prop_map(Formula::Var),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::conj(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                inner.prop_map(Formula::half),
            ]
        })
    }

    proptest! {
        #[test]
        fn round_trip(f in arb_formula()) {
            prop_assert_eq!(parse_formula(&render_formula(&f)).unwrap(), f);
        }

        #[test]
        fn language_monotone_in_subformulas(f in arb_formula()) {
            let lf = super::super::classify_language(&f);
            for c in f.children() {
                prop_assert!(super::super::classify_language(c).within(lf));
            }
        }
    }
}
