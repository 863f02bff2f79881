"""Milnor and Tyurina numbers of isolated hypersurface singularities.

A polynomial f in the nilpotent variables with a critical point at the
origin is analysed through its truncations Q[t_1..t_m]/(J + m^N), where J
is the Jacobian ideal (for mu) or the Jacobian ideal plus f itself (for
tau). The truncation bound N is raised until some degree d < N has every
degree-d monomial inside the ideal's row space; that certifies
m^d <= J + m^N for every deeper truncation, so the quotient dimension has
stabilized and is the true dimension of the local quotient ring.

The cross-check mu - tau = dim H^{m-1}(R', I') with R' = Q[t]/(f, m^N) ties
the two counts to the de Rham machinery.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, AlgElem, monomials_of_degree
from . import derham as dr


def _poly_terms(f):
    """Normalize input to {texp: Fraction}, nilpotent variables only."""
    if isinstance(f, AlgElem):
        out = {}
        for (pexp, texp), c in f.terms.items():
            if any(pexp):
                raise ValueError("polynomial must not involve parameters")
            out[texp] = out.get(texp, 0) + c
        return {k: Fraction(c) for k, c in out.items() if c}
    out = {}
    for k, c in dict(f).items():
        c = Fraction(c)
        if c:
            out[tuple(k)] = out.get(tuple(k), 0) + c
    return {k: c for k, c in out.items() if c}


def _check_critical(terms):
    if not terms:
        raise ValueError("origin not critical")
    widths = {len(k) for k in terms}
    if len(widths) != 1:
        raise ValueError("inconsistent exponent tuples")
    for texp in terms:
        if sum(texp) <= 1:
            raise ValueError("origin not critical")
    return widths.pop()


def _partials(terms, m):
    outs = []
    for i in range(m):
        g = {}
        for texp, c in terms.items():
            if texp[i]:
                e = texp[:i] + (texp[i] - 1,) + texp[i + 1:]
                g[e] = g.get(e, 0) + c * texp[i]
        outs.append({k: Fraction(c) for k, c in g.items() if c})
    return outs


def _reduces_to_zero(A, texp):
    if A.monomial_ideal:
        return A._mono_dead(texp)
    return A._ring_rows.contains({texp: Fraction(1)})


def _stabilized_dim(terms, m, gens, n_max):
    gens = [g for g in gens if g]
    deg = max(sum(k) for k in terms)
    start = max(deg + 2, 4)
    for N in range(start, n_max + 1):
        A = Algebra(m, N, ideal=gens)
        for d in range(1, N):
            if all(_reduces_to_zero(A, e) for e in monomials_of_degree(m, d)):
                return len(A.nil_basis), N, d
    raise ValueError("isolated singularity not detected up to N_max")


def milnor_number(f, n_max=24):
    """Dimension of Q[[t]]/(Jacobian ideal), with the certifying truncation."""
    terms = _poly_terms(f)
    m = _check_critical(terms)
    return _stabilized_dim(terms, m, _partials(terms, m), n_max)


def tyurina_number(f, n_max=24):
    """Dimension of Q[[t]]/(f + Jacobian ideal)."""
    terms = _poly_terms(f)
    m = _check_critical(terms)
    dim, n_used, _ = _stabilized_dim(terms, m, _partials(terms, m) + [terms], n_max)
    return dim, n_used


def _poly_str(terms, m):
    deg = max(sum(k) for k in terms)
    scratch = Algebra(m, deg + 1)
    elem = scratch.element({((), texp): c for texp, c in terms.items()})
    return str(elem)


@dataclass
class SingularityReport:
    f: str
    m: int
    mu: int
    tau: int
    h_dim: int
    N_used: int
    stabilization_degree: int

    def to_json(self):
        return {"f": self.f, "m": self.m, "mu": self.mu, "tau": self.tau,
                "h_dim": self.h_dim, "N_used": self.N_used,
                "stabilization_degree": self.stabilization_degree,
                "gap": self.mu - self.tau}


def hypersurface_h_dim(f, N):
    """dim H^{m-1}(R', I') for R' = Q[t]/(f, m^N)."""
    terms = _poly_terms(f)
    m = _check_critical(terms)
    A = Algebra(m, N, ideal=[terms])
    report = dr.cohomology(A, dr.FULL, n_max=m)
    for row in report.rows:
        if row["degree"] == m - 1:
            return row["dim_h"]
    raise ValueError("missing cohomology row")


def singularity_report(f, n_max=24):
    terms = _poly_terms(f)
    m = _check_critical(terms)
    mu, n_mu, d_stab = _stabilized_dim(terms, m, _partials(terms, m), n_max)
    tau, _ = tyurina_number(terms, n_max)
    n_used = n_mu
    h_dim = hypersurface_h_dim(terms, n_used)
    if h_dim != mu - tau:
        raise ValueError("de Rham cross-check failed")
    return SingularityReport(_poly_str(terms, m), m, mu, tau, h_dim,
                             n_used, d_stab)
