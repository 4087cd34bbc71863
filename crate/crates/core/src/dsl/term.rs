use std::fmt;

/// One of the three identity variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }

    pub fn from_char(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            'y' => Some(Var::Y),
            'z' => Some(Var::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    /// The unit constant `1`.
    Unit,
    /// Application of the twisting map `a(..)`.
    Twist(Box<Term>),
    Prod(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn twist(t: Term) -> Term {
        Term::Twist(Box::new(t))
    }

    pub fn prod(l: Term, r: Term) -> Term {
        Term::Prod(Box::new(l), Box::new(r))
    }

    pub fn uses_unit(&self) -> bool {
        match self {
            Term::Unit => true,
            Term::Var(_) => false,
            Term::Twist(t) => t.uses_unit(),
            Term::Prod(l, r) => l.uses_unit() || r.uses_unit(),
        }
    }

    /// Number of occurrences of each variable, indexed by `Var::index`.
    pub fn occurrences(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        self.count_into(&mut counts);
        counts
    }

    fn count_into(&self, counts: &mut [usize; 3]) {
        match self {
            Term::Var(v) => counts[v.index()] += 1,
            Term::Unit => {}
            Term::Twist(t) => t.count_into(counts),
            Term::Prod(l, r) => {
                l.count_into(counts);
                r.count_into(counts);
            }
        }
    }
}

/// Display-only choice of product notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductSymbol {
    Star,
    Bracket,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Form {
    Equation {
        lhs: Term,
        rhs: Term,
    },
    /// Sum over the cyclic permutations (x,y,z), (y,z,x), (z,x,y) equals zero.
    CyclicZero(Term),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub form: Form,
    pub symbol: ProductSymbol,
}

impl Identity {
    pub fn equation(lhs: Term, rhs: Term) -> Identity {
        Identity { form: Form::Equation { lhs, rhs }, symbol: ProductSymbol::Star }
    }

    pub fn cyclic(body: Term) -> Identity {
        Identity { form: Form::CyclicZero(body), symbol: ProductSymbol::Bracket }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.form, Form::CyclicZero(_))
    }

    pub fn uses_unit(&self) -> bool {
        match &self.form {
            Form::Equation { lhs, rhs } => lhs.uses_unit() || rhs.uses_unit(),
            Form::CyclicZero(body) => body.uses_unit(),
        }
    }

    /// Variable occurrence counts per side (equation) or in the body (cyclic).
    pub(crate) fn max_occurrences(&self) -> [usize; 3] {
        match &self.form {
            Form::Equation { lhs, rhs } => {
                let (l, r) = (lhs.occurrences(), rhs.occurrences());
                [l[0].max(r[0]), l[1].max(r[1]), l[2].max(r[2])]
            }
            Form::CyclicZero(body) => body.occurrences(),
        }
    }

    /// Renders in the concrete syntax accepted by [`crate::dsl::parse_identity`].
    pub fn render(&self) -> String {
        self.to_string()
    }
}

struct Side<'a>(&'a Term, ProductSymbol);
struct Inner<'a>(&'a Term, ProductSymbol);

impl fmt::Display for Side<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.0, self.1) {
            (Term::Prod(l, r), ProductSymbol::Star) => {
                write!(f, "{}*{}", Inner(l, self.1), Inner(r, self.1))
            }
            (t, s) => write!(f, "{}", Inner(t, s)),
        }
    }
}

impl fmt::Display for Inner<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.1;
        match self.0 {
            Term::Var(v) => write!(f, "{}", v.name()),
            Term::Unit => f.write_str("1"),
            Term::Twist(t) => write!(f, "a({})", Side(t, sym)),
            Term::Prod(l, r) => match sym {
                ProductSymbol::Star => write!(f, "({}*{})", Inner(l, sym), Inner(r, sym)),
                ProductSymbol::Bracket => write!(f, "[{},{}]", Side(l, sym), Side(r, sym)),
            },
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            Form::Equation { lhs, rhs } => {
                write!(f, "{} = {}", Side(lhs, self.symbol), Side(rhs, self.symbol))
            }
            Form::CyclicZero(body) => write!(f, "cyc {} = 0", Side(body, self.symbol)),
        }
    }
}
