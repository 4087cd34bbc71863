//! Term language for twisted identities.

mod catalog;
mod parser;
mod term;

pub use catalog::{builtin, s_transform, Family, TypeName, TypeTag};
pub use parser::parse_identity;
pub use term::{Form, Identity, ProductSymbol, Term, Var};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf =
            prop_oneof![Just(Term::Var(Var::X)), Just(Term::Var(Var::Y)), Just(Term::Var(Var::Z)), Just(Term::Unit),];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Term::twist),
                (inner.clone(), inner).prop_map(|(l, r)| Term::prod(l, r)),
            ]
        })
    }

    fn arb_identity() -> impl Strategy<Value = Identity> {
        let sym = prop_oneof![Just(ProductSymbol::Star), Just(ProductSymbol::Bracket)];
        prop_oneof![
            (arb_term(), arb_term(), sym.clone())
                .prop_map(|(lhs, rhs, symbol)| Identity { form: Form::Equation { lhs, rhs }, symbol }),
            (arb_term(), sym).prop_map(|(b, symbol)| Identity { form: Form::CyclicZero(b), symbol }),
        ]
    }

    fn twist_on_vars_only(t: &Term) -> bool {
        match t {
            Term::Twist(inner) => matches!(inner.as_ref(), Term::Var(_)),
            Term::Prod(l, r) => twist_on_vars_only(l) && twist_on_vars_only(r),
            _ => true,
        }
    }

    proptest! {
        #[test]
        fn parse_inverts_render(id in arb_identity()) {
            // a lone product symbol never appears without a product
            let has_prod = |t: &Term| format!("{t:?}").contains("Prod");
            let any_prod = match &id.form {
                Form::Equation { lhs, rhs } => has_prod(lhs) || has_prod(rhs),
                Form::CyclicZero(b) => has_prod(b),
            };
            let parsed = parse_identity(&id.render()).unwrap();
            if any_prod {
                prop_assert_eq!(parsed, id);
            } else {
                prop_assert_eq!(parsed.form, id.form);
            }
        }

        #[test]
        fn s_transform_is_involution(body in arb_term()) {
            prop_assume!(twist_on_vars_only(&body));
            let id = Identity::cyclic(body);
            let once = s_transform(&id).unwrap();
            prop_assert_eq!(s_transform(&once).unwrap(), id);
        }
    }
}
