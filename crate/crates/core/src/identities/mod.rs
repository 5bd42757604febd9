//! The identity catalog: every connection, summation and generating-function
//! formula of the q-LGHP theory, with literal and corrected readings where
//! the printed form is ambiguous, plus the helper lemmas.
//!
//! Both sides of every identity are expanded independently from the
//! explicit-sum constructors in [`crate::families`] and compared as canonical
//! polynomials.

mod referee;
mod sides;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::qarith::{format_rational, Rational};

pub use referee::{coherence_checks, referee, CoherenceReport, RefereeReport, REFEREE_PAIRS};
pub use sides::{build_sides, Sides};
pub use verify::{certify, verify, verify_suite, Certificate, Grid, Status, VerifyReport};

/// Catalog tags. `*Lit` variants are the as-printed readings kept for the referee.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Gf217,
    Gf36,
    T312,
    T312Lit,
    E325,
    T326,
    T326Lit,
    /// `C4.1` through `C4.21`.
    C4(u8),
    C415Lit,
    C419Lit,
    C420Lit,
    /// `L4.22` through `L4.31`; `L4(26)` is the `g^2` reading.
    L4(u8),
    L426Lit,
    H314,
    H310,
    H322,
    H324,
    R212,
    R211,
    R211Neg,
}

/// How an identity takes part in the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// A stated formula; failure is a verification failure.
    Claim,
    /// An alternative reading of an ambiguous formula, judged by the referee.
    Reading,
    /// Reported for diagnosis only.
    Diagnostic,
}

/// Which values of `q` an identity is checked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMode {
    /// At every requested `q`, certifiable as an identity in `q`.
    Deformed,
    /// Only at `q = 1`.
    Classical,
    /// Independent of `q`; checked once.
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    M,
    S,
    K,
    L,
    N,
    R,
    Order,
    Seed,
    Route,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::M => "m",
            Param::S => "s",
            Param::K => "k",
            Param::L => "l",
            Param::N => "n",
            Param::R => "r",
            Param::Order => "N",
            Param::Seed => "seed",
            Param::Route => "route",
        }
    }
}

/// How the `q -> 1` limits are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Route {
    /// Classical constructors with plain factorials and ordinary differences.
    #[default]
    Classical,
    /// The q-constructors and JHC powers evaluated at `q = 1`.
    QAtOne,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Classical => "classical",
            Route::QAtOne => "q1",
        }
    }
}

use Param::*;

impl IdentityId {
    pub fn all() -> Vec<IdentityId> {
        let mut out = vec![
            IdentityId::Gf217,
            IdentityId::Gf36,
            IdentityId::T312,
            IdentityId::T312Lit,
            IdentityId::E325,
            IdentityId::T326,
            IdentityId::T326Lit,
        ];
        out.extend((1..=21).map(IdentityId::C4));
        out.extend([IdentityId::C415Lit, IdentityId::C419Lit, IdentityId::C420Lit]);
        out.extend((22..=31).map(IdentityId::L4));
        out.extend([
            IdentityId::L426Lit,
            IdentityId::H314,
            IdentityId::H310,
            IdentityId::H322,
            IdentityId::H324,
            IdentityId::R212,
            IdentityId::R211,
            IdentityId::R211Neg,
        ]);
        out
    }

    pub fn as_str(&self) -> String {
        match self {
            IdentityId::Gf217 => "GF-2.17".into(),
            IdentityId::Gf36 => "GF-3.6".into(),
            IdentityId::T312 => "T3.1-3.12".into(),
            IdentityId::T312Lit => "T3.1-3.12-lit".into(),
            IdentityId::E325 => "E3.25".into(),
            IdentityId::T326 => "T3.2-3.26".into(),
            IdentityId::T326Lit => "T3.2-3.26-lit".into(),
            IdentityId::C4(i) => format!("C4.{i}"),
            IdentityId::C415Lit => "C4.15-lit".into(),
            IdentityId::C419Lit => "C4.19-lit".into(),
            IdentityId::C420Lit => "C4.20-lit".into(),
            IdentityId::L4(i) => format!("L4.{i}"),
            IdentityId::L426Lit => "L4.26-lit".into(),
            IdentityId::H314 => "H3.14".into(),
            IdentityId::H310 => "H3.10".into(),
            IdentityId::H322 => "H3.22".into(),
            IdentityId::H324 => "H3.24".into(),
            IdentityId::R212 => "R2.12".into(),
            IdentityId::R211 => "R2.11".into(),
            IdentityId::R211Neg => "R2.11-neg".into(),
        }
    }

    pub fn role(&self) -> Role {
        match self {
            IdentityId::T312Lit
            | IdentityId::T326Lit
            | IdentityId::C415Lit
            | IdentityId::C419Lit
            | IdentityId::C420Lit
            | IdentityId::L426Lit => Role::Reading,
            IdentityId::R211Neg => Role::Diagnostic,
            _ => Role::Claim,
        }
    }

    pub fn q_mode(&self) -> QMode {
        match self {
            IdentityId::L4(_) | IdentityId::L426Lit => QMode::Classical,
            IdentityId::H310 | IdentityId::H322 | IdentityId::H324 => QMode::Free,
            _ => QMode::Deformed,
        }
    }

    /// Parameters the identity depends on, in grid enumeration order.
    pub fn params(&self) -> &'static [Param] {
        match self {
            IdentityId::Gf217 => &[M, Order],
            IdentityId::Gf36 => &[M, S, Order],
            IdentityId::T312 | IdentityId::T312Lit | IdentityId::E325 => &[K, L, M, S],
            IdentityId::T326 | IdentityId::T326Lit => &[N, R, M, S],
            IdentityId::C4(i) => match i {
                1 | 13 => &[K, L, M],
                2 => &[K, M],
                3 => &[L, M],
                4..=7 => &[N, M, S],
                8 => &[N, R, M, S],
                9 | 10 => &[K, M, S],
                11 | 12 => &[L, M, S],
                14 => &[N, R, M],
                15 => &[K, L, S],
                16 => &[K, L],
                17..=20 => &[N],
                _ => &[N, R],
            },
            IdentityId::C415Lit => &[K, L, S],
            IdentityId::C419Lit | IdentityId::C420Lit => &[N],
            IdentityId::L4(i) => match i {
                22 | 24 => &[K, L, M, S, Route],
                23 | 25 => &[N, R, M, S, Route],
                26 => &[N, M, Route],
                27 => &[K, L, M, Route],
                28 | 29 => &[N, M, Route],
                _ => &[N, R, M, Route],
            },
            IdentityId::L426Lit => &[N, M, Route],
            IdentityId::H314 => &[Seed],
            IdentityId::H310 => &[M, Seed],
            IdentityId::H322 => &[Seed],
            IdentityId::H324 => &[L],
            IdentityId::R212 => &[Order],
            IdentityId::R211 | IdentityId::R211Neg => &[M, Order],
        }
    }

    /// The identity in ASCII notation: `(a -q b)` and `(a +q b)` are JHC
    /// powers, `[n;k]` Gaussian binomials in base `q`.
    pub fn formula(&self) -> &'static str {
        match self {
            IdentityId::Gf217 => "sum_n t^n/[n]! mL_n(x,y) = e_q(yt) eps^m_q(-x t^m)",
            IdentityId::Gf36 => "sum_n t^n/[n]! LH_n(x,y,z) = e_q(yt) E_{q^s}(z t^s) eps^m_q(-x t^m)",
            IdentityId::T312 => "LH_{k+l}(x,xi,z) = sum [k;n][l;r] q^{r(r-l)} (xi -q y)^{n+r} LH_{k+l-n-r}(x,y,z)",
            IdentityId::T312Lit => "LH_{k+l}(x,xi,z) = sum [k;n][l;r] q^{r(r-l)} (xi -q y)^{n+r} mL_{k+l-n-r}(x,y)",
            IdentityId::E325 => {
                "LH_{k+l}(x,xi,zeta) = sum q^{r(r-l)} [k;n][l;r] G^s_{n+r}(xi -q y, zeta -q z) LH_{k+l-n-r}(x,y,z)"
            }
            IdentityId::T326 => {
                "LH_n(x,xi,zeta) LH_r(X,Omega,U) = sum [n;k][r;p] G^s_k(xi -q y, zeta -q z) G^s_p(Omega -q Y, U -q Z) LH_{n-k}(x,y,z) LH_{r-p}(X,Y,Z)"
            }
            IdentityId::T326Lit => {
                "LH_n(x,xi,zeta) LH_r(X,Omega,U) = sum [k;n][p;r] G^s_k(xi -q y, zeta -q z) G^s_p(Omega -q Y, U -q Z) LH_{n-k}(x,y,z) LH_{r-p}(X,Y,Z)"
            }
            IdentityId::C4(i) => match i {
                1 | 13 => "mL_{k+l}(x,xi) = sum [k;n][l;r] q^{r(r-l)} (xi -q y)^{n+r} mL_{k+l-n-r}(x,y)",
                2 => "mL_k(x,xi) = sum [k;n] (xi -q y)^n mL_{k-n}(x,y)",
                3 => "mL_l(x,xi) = sum [l;r] q^{r(r-l)} (xi -q y)^r mL_{l-r}(x,y)",
                4 => "LH_n(x,xi,zeta) = sum [n;k] G^s_k(xi -q y, zeta -q z) LH_{n-k}(x,y,z)",
                5 => "LH_n(x,xi,zeta) = sum [n;k] q^{k(k-n)} G^s_k(xi -q y, zeta -q z) LH_{n-k}(x,y,z)",
                6 => "LH_n(x, xi +q y, z) = sum [n;k] xi^k LH_{n-k}(x,y,z)",
                7 => "LH_n(x, xi +q y, z) = sum [n;k] q^{k(k-n)} xi^k LH_{n-k}(x,y,z)",
                8 => {
                    "LH_n(x,xi,zeta +q z) LH_r(X,Omega,U +q Z) = sum [n;k][r;p] (xi -q y)^k (Omega -q Y)^p LH_{n-k}(x,y,z) LH_{r-p}(X,Y,Z)"
                }
                9 => "LH_k(x, xi +q y, zeta +q z) = sum [k;n] G^s_n(xi,zeta) LH_{k-n}(x,y,z)",
                10 => "LH_k(x, xi +q y, z) = sum [k;n] xi^n LH_{k-n}(x,y,z)",
                11 => "LH_l(x, xi +q y, zeta +q z) = sum [l;r] q^{r(r-l)} G^s_r(xi,zeta) LH_{l-r}(x,y,z)",
                12 => "LH_l(x, xi +q y, z) = sum [l;r] q^{r(r-l)} xi^r LH_{l-r}(x,y,z)",
                14 => {
                    "mL_n(x,xi) mL_r(X,Omega) = sum [n;k][r;p] (xi -q y)^k (Omega -q Y)^p mL_{n-k}(x,y) mL_{r-p}(X,Y)"
                }
                15 => {
                    "G^s_{k+l}(xi,zeta) = sum [k;n][l;r] q^{r(r-l)} G^s_{n+r}(xi -q y, (-zeta/[s]) -q (-z/[s])) G^s_{k+l-n-r}(y,z)"
                }
                16 => "H_{k+l}(xi,z) = sum [k;n][l;r] q^{r(r-l)} (xi -q y)^{n+r} H_{k+l-n-r}(y,z)",
                17 => "H_n(xi,z) = sum [n;k] (xi -q y)^k H_{n-k}(y,z)",
                18 => "H_n(xi,z) = sum [n;k] q^{k(k-n)} (xi -q y)^k H_{n-k}(y,z)",
                19 => "H_n(xi +q y, z) = sum [n;k] xi^k H_{n-k}(y,z)",
                20 => "H_n(xi +q y, z) = sum [n;k] q^{k(k-n)} xi^k H_{n-k}(y,z)",
                _ => "H_n(xi,z) H_r(Omega,Z) = sum [n;k][r;p] (xi -q y)^k (Omega -q Y)^p H_{n-k}(y,z) H_{r-p}(Y,Z)",
            },
            IdentityId::C415Lit => {
                "G^s_{k+l}(xi,zeta) = sum [k;n][l;r] q^{r(r-l)} G^s_{n+r}(xi -q y, zeta -q z/[s]) G^s_{k+l-n-r}(y,z)"
            }
            IdentityId::C419Lit => "H_n(xi +q y, z) = sum [n;k] xi^{n-k} H_k(y,z)",
            IdentityId::C420Lit => "H_n(xi +q y, z) = sum [n;k] q^{k(k-n)} xi^{n-k} H_k(y,z)",
            IdentityId::L4(i) => match i {
                22 => "LH_{k+l}(x,xi,zeta) = sum C(k,n)C(l,r) g^s_{n+r}(xi-y, zeta-z) LH_{k+l-n-r}(x,y,z)",
                23 => {
                    "LH_n(x,xi,zeta) LH_r(X,Omega,U) = sum C(n,k)C(r,p) g^s_k(xi-y, zeta-z) g^s_p(Omega-Y, U-Z) LH_{n-k}(x,y,z) LH_{r-p}(X,Y,Z)"
                }
                24 => "LH_{k+l}(x,xi,z) = sum C(k,n)C(l,r) (xi-y)^{n+r} LH_{k+l-n-r}(x,y,z)",
                25 => {
                    "LH_n(x,xi,z) LH_r(X,Omega,Z) = sum C(n,k)C(r,p) (xi-y)^k (Omega-Y)^p LH_{n-k}(x,y,z) LH_{r-p}(X,Y,Z)"
                }
                26 => "LH^{(m,2)}_n(0,y,z)|_{q=1} = g^2_n(y,z)",
                27 => "g^m_{k+l}(xi,y) = sum C(k,n)C(l,r) (xi-x)^{n+r} g^m_{k+l-n-r}(x,y)",
                28 => "g^m_n(xi,y) = sum C(n,k) (xi-x)^k g^m_{n-k}(x,y)",
                29 => "g^m_n(xi+x,y) = sum C(n,k) xi^{n-k} g^m_k(x,y)",
                30 => {
                    "g^m_n(xi,zeta) g^m_r(Omega,U) = sum C(n,k)C(r,p) g^m_k(xi-y, zeta-z) g^m_p(Omega-Y, U-Z) g^m_{n-k}(y,z) g^m_{r-p}(Y,Z)"
                }
                _ => "g^m_n(xi,z) g^m_r(Omega,Z) = sum C(n,k)C(r,p) (xi-y)^k (Omega-Y)^p g^m_{n-k}(y,z) g^m_{r-p}(Y,Z)",
            },
            IdentityId::L426Lit => "LH^{(m,2)}_n(0,y,z)|_{q=1} = g^m_n(y,z)",
            IdentityId::H314 => "sum_j F(j) (x +q y)^j/[j]! = sum_{j,s} F(j+s) q^{C(s,2)} x^j y^s/([j]![s]!)",
            IdentityId::H310 => "sum_n sum_k A(k,n) = sum_n sum_{k<=n/m} A(k,n-mk)",
            IdentityId::H322 => "sum_p sum_s A(p,s) = sum_p sum_{s<=p} A(s,p-s)",
            IdentityId::H324 => "C(r,2) + C(l-r,2) - C(l,2) = r(r-l)",
            IdentityId::R212 => "e_q(a)E_q(-a) = 1 and e_q(a)E_q(b) = e_q(a +q b)",
            IdentityId::R211 => "e_q(a)E_{q^m}(b) = e_q(a -_{q,q^m} b)",
            IdentityId::R211Neg => "e_q(a)E_{q^m}(-b) = e_q(a -_{q,q^m} b)",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        IdentityId::all()
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity tag `{s}`")))
    }
}

/// Parameter values of one instance; entries an identity does not use stay at their defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CaseParams {
    pub m: u32,
    pub s: u32,
    pub k: u32,
    pub l: u32,
    pub n: u32,
    pub r: u32,
    pub order: u32,
    pub seed: u64,
    pub route: Route,
}

impl CaseParams {
    pub fn get(&self, p: Param) -> String {
        match p {
            M => self.m.to_string(),
            S => self.s.to_string(),
            K => self.k.to_string(),
            L => self.l.to_string(),
            N => self.n.to_string(),
            R => self.r.to_string(),
            Order => self.order.to_string(),
            Seed => self.seed.to_string(),
            Route => self.route.name().to_string(),
        }
    }

    pub fn set(&mut self, p: Param, value: u64) {
        let v = value as u32;
        match p {
            M => self.m = v,
            S => self.s = v,
            K => self.k = v,
            L => self.l = v,
            N => self.n = v,
            R => self.r = v,
            Order => self.order = v,
            Seed => self.seed = value,
            Route => self.route = if value == 0 { self::Route::Classical } else { self::Route::QAtOne },
        }
    }
}

/// One checkable instance.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub params: CaseParams,
    /// `None` for q-independent identities.
    pub q: Option<Rational>,
}

impl IdentityCase {
    pub fn new(id: IdentityId, params: CaseParams, q: Option<Rational>) -> Self {
        IdentityCase { id, params, q }
    }

    /// `k=2 l=2 m=2 s=2` style rendering of the used parameters.
    pub fn params_string(&self) -> String {
        self.id.params().iter().map(|&p| format!("{}={}", p.name(), self.params.get(p))).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.id, self.params_string())?;
        if let Some(q) = &self.q {
            write!(f, " q={}", format_rational(q))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        let all = IdentityId::all();
        assert_eq!(all.len(), 7 + 21 + 3 + 10 + 1 + 4 + 3);
        for id in all {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("C4.22".parse::<IdentityId>().is_err());
        assert!("".parse::<IdentityId>().is_err());
    }

    #[test]
    fn case_rendering() {
        let mut p = CaseParams::default();
        p.set(Param::K, 2);
        p.set(Param::L, 1);
        p.set(Param::M, 2);
        p.set(Param::S, 3);
        let case = IdentityCase::new(IdentityId::T312, p, Some(Rational::new(1.into(), 2.into())));
        assert_eq!(case.to_string(), "T3.1-3.12 k=2 l=1 m=2 s=3 q=1/2");
    }
}
