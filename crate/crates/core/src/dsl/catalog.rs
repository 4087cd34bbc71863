use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::parser::parse_identity;
use super::term::{Form, Identity, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Assoc,
    Lie,
}

/// Placement of the twisting map; shared by both families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TypeName {
    I1,
    I2,
    I3,
    II,
    II1,
    II2,
    II3,
    III,
    IIIp,
    IIIpp,
}

impl TypeName {
    pub const ALL: [TypeName; 10] = [
        TypeName::I1,
        TypeName::I2,
        TypeName::I3,
        TypeName::II,
        TypeName::II1,
        TypeName::II2,
        TypeName::II3,
        TypeName::III,
        TypeName::IIIp,
        TypeName::IIIpp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TypeName::I1 => "I1",
            TypeName::I2 => "I2",
            TypeName::I3 => "I3",
            TypeName::II => "II",
            TypeName::II1 => "II1",
            TypeName::II2 => "II2",
            TypeName::II3 => "II3",
            TypeName::III => "III",
            TypeName::IIIp => "III'",
            TypeName::IIIpp => "III''",
        }
    }

    pub fn assoc(self) -> TypeTag {
        TypeTag { family: Family::Assoc, name: self }
    }

    pub fn lie(self) -> TypeTag {
        TypeTag { family: Family::Lie, name: self }
    }
}

impl fmt::Display for TypeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TypeName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('′', "'").replace('″', "''").replace('p', "'");
        TypeName::ALL.into_iter().find(|t| t.as_str() == norm).ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

impl TryFrom<String> for TypeName {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TypeName> for String {
    fn from(t: TypeName) -> String {
        t.as_str().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TypeTag {
    pub family: Family,
    pub name: TypeName,
}

impl TypeTag {
    pub fn all() -> impl Iterator<Item = TypeTag> {
        TypeName::ALL.into_iter().map(TypeName::assoc).chain(TypeName::ALL.into_iter().map(TypeName::lie))
    }

    pub fn all_assoc() -> impl Iterator<Item = TypeTag> {
        TypeName::ALL.into_iter().map(TypeName::assoc)
    }

    pub fn all_lie() -> impl Iterator<Item = TypeTag> {
        TypeName::ALL.into_iter().map(TypeName::lie)
    }

    /// Source text of the built-in identity.
    pub fn source(self) -> &'static str {
        use TypeName::*;
        match (self.family, self.name) {
            (Family::Assoc, I1) => "a(x)*(y*z) = (x*y)*a(z)",
            (Family::Assoc, I2) => "x*(a(y)*z) = (x*a(y))*z",
            (Family::Assoc, I3) => "x*(y*a(z)) = (a(x)*y)*z",
            (Family::Assoc, II) => "x*a(y*z) = a(x*y)*z",
            (Family::Assoc, II1) => "x*(a(y)*a(z)) = (a(x)*a(y))*z",
            (Family::Assoc, II2) => "a(x)*(y*a(z)) = (a(x)*y)*a(z)",
            (Family::Assoc, II3) => "a(x)*(a(y)*z) = (x*a(y))*a(z)",
            (Family::Assoc, III) => "a(x*(y*z)) = a((x*y)*z)",
            (Family::Assoc, IIIp) => "a(x)*a(y*z) = a(x*y)*a(z)",
            (Family::Assoc, IIIpp) => "a(x)*(a(y)*a(z)) = (a(x)*a(y))*a(z)",
            (Family::Lie, I1) => "cyc [a(x),[y,z]] = 0",
            (Family::Lie, I2) => "cyc [x,[a(y),z]] = 0",
            (Family::Lie, I3) => "cyc [x,[y,a(z)]] = 0",
            (Family::Lie, II) => "cyc [x,a([y,z])] = 0",
            (Family::Lie, II1) => "cyc [x,[a(y),a(z)]] = 0",
            (Family::Lie, II2) => "cyc [a(x),[y,a(z)]] = 0",
            (Family::Lie, II3) => "cyc [a(x),[a(y),z]] = 0",
            (Family::Lie, III) => "cyc a([x,[y,z]]) = 0",
            (Family::Lie, IIIp) => "cyc [a(x),a([y,z])] = 0",
            (Family::Lie, IIIpp) => "cyc [a(x),[a(y),a(z)]] = 0",
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Assoc => write!(f, "assoc:{}", self.name),
            Family::Lie => write!(f, "lie:{}", self.name),
        }
    }
}

/// Accepts `assoc:II1`, `lie:III'` or a bare name (associative family).
impl FromStr for TypeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (family, name) = match s.split_once(':') {
            Some(("assoc", n)) => (Family::Assoc, n),
            Some(("lie", n)) => (Family::Lie, n),
            Some(_) => return Err(Error::UnknownTag(s.to_string())),
            None => (Family::Assoc, s),
        };
        let name: TypeName = name.parse().map_err(|_| Error::UnknownTag(s.to_string()))?;
        Ok(TypeTag { family, name })
    }
}

impl TryFrom<String> for TypeTag {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TypeTag> for String {
    fn from(t: TypeTag) -> String {
        t.to_string()
    }
}

/// Catalog identity for `tag`.
pub fn builtin(tag: TypeTag) -> Identity {
    parse_identity(tag.source()).expect("catalog sources parse")
}

/// Exchanges the twisting map and the identity at every variable position.
pub fn s_transform(identity: &Identity) -> Result<Identity> {
    fn go(t: &Term) -> Result<Term> {
        Ok(match t {
            Term::Var(v) => Term::twist(Term::Var(*v)),
            Term::Twist(inner) => match inner.as_ref() {
                Term::Var(v) => Term::Var(*v),
                _ => return Err(Error::NotSApplicable),
            },
            Term::Unit => Term::Unit,
            Term::Prod(l, r) => Term::prod(go(l)?, go(r)?),
        })
    }
    let form = match &identity.form {
        Form::Equation { lhs, rhs } => Form::Equation { lhs: go(lhs)?, rhs: go(rhs)? },
        Form::CyclicZero(body) => Form::CyclicZero(go(body)?),
    };
    Ok(Identity { form, symbol: identity.symbol })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_tags() {
        assert_eq!(TypeTag::all().count(), 20);
        let distinct: std::collections::HashSet<_> = TypeTag::all().map(builtin).collect();
        assert_eq!(distinct.len(), 20);
    }

    #[test]
    fn round_trip_all_builtins() {
        for tag in TypeTag::all() {
            let id = builtin(tag);
            assert_eq!(id.render(), tag.source(), "{tag}");
            assert_eq!(parse_identity(&id.render()).unwrap(), id);
        }
    }

    #[test]
    fn assoc_ii_and_lie_samples() {
        assert_eq!(builtin("II".parse().unwrap()).render(), "x*a(y*z) = a(x*y)*z");
        assert_eq!(builtin("lie:III".parse().unwrap()).render(), "cyc a([x,[y,z]]) = 0");
        assert_eq!(builtin("lie:II2".parse().unwrap()).render(), "cyc [a(x),[y,a(z)]] = 0");
    }

    #[test]
    fn s_maps_family_one_onto_family_two() {
        for (one, two) in [(TypeName::I1, TypeName::II1), (TypeName::I2, TypeName::II2), (TypeName::I3, TypeName::II3)]
        {
            assert_eq!(s_transform(&builtin(one.lie())).unwrap(), builtin(two.lie()));
            assert_eq!(s_transform(&builtin(two.lie())).unwrap(), builtin(one.lie()));
        }
    }

    #[test]
    fn s_not_applicable_to_family_three() {
        assert_eq!(s_transform(&builtin(TypeName::III.lie())), Err(Error::NotSApplicable));
        assert_eq!(s_transform(&builtin(TypeName::IIIp.lie())), Err(Error::NotSApplicable));
    }

    #[test]
    fn tag_parsing_variants() {
        assert_eq!("III′".parse::<TypeName>().unwrap(), TypeName::IIIp);
        assert_eq!("III''".parse::<TypeName>().unwrap(), TypeName::IIIpp);
        assert_eq!("IIIpp".parse::<TypeName>().unwrap(), TypeName::IIIpp);
        assert_eq!("lie:I2".parse::<TypeTag>().unwrap(), TypeName::I2.lie());
        assert!("IV".parse::<TypeTag>().is_err());
    }
}
