"""Milnor K-symbols and their Bloch images.

A SymbolSum is an integer combination of unit tuples {r_1,...,r_{n+1}}. The
Bloch map splits every entry as unit = s*(1+x) with s in the base and x
nilpotent, expands multilinearly, drops sub-tensors containing a literal 1,
reports sub-tensors with no nilpotent entry as the discarded base component,
and evaluates each remaining sub-tensor at its first nilpotent slot:

    {v_1,..,v_i, 1+x, v_{i+2},..} |-> (-1)^i log(1+x) * wedge of dlog(v_j)

The result is canonicalized in Omega^n/d(Omega^{n-1}) relative to the full
nilpotent ideal. Evaluating at the last nilpotent slot instead is kept as an
independence check; the two agree as classes.
"""

from dataclasses import dataclass
from fractions import Fraction

from .linalg import RowSpace
from .algebra import Algebra, AlgElem, RingMap
from . import forms as fm
from .forms import Form, coord_sort_key, block_key
from . import derham as dr


class SymbolSum:
    """Integer combination of unit tuples of one arity."""

    __slots__ = ("algebra", "arity", "terms")

    def __init__(self, algebra, arity, terms):
        self.algebra = algebra
        self.arity = arity
        clean = []
        for coeff, tup in terms:
            if len(tup) != arity:
                raise ValueError("arity mismatch")
            entries = []
            for u in tup:
                if isinstance(u, (int, Fraction)):
                    u = algebra.const(u)
                if not algebra.is_unit(u):
                    raise ValueError("entry not a unit")
                entries.append(u)
            if coeff:
                clean.append((int(coeff), tuple(entries)))
        self.terms = tuple(clean)

    def __add__(self, other):
        if not isinstance(other, SymbolSum):
            return NotImplemented
        if other.algebra is not self.algebra:
            raise ValueError("symbols live in different algebras")
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        return SymbolSum(self.algebra, self.arity, list(self.terms) + list(other.terms))

    def __neg__(self):
        return SymbolSum(self.algebra, self.arity,
                         [(-c, tup) for c, tup in self.terms])

    def __sub__(self, other):
        if not isinstance(other, SymbolSum):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return SymbolSum(self.algebra, self.arity,
                         [(k * c, tup) for c, tup in self.terms])

    __mul__ = __rmul__

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for c, tup in self.terms:
            body = "{" + ", ".join(str(u) for u in tup) + "}"
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
            if not bits:
                bits.append(body if c > 0 else "-" + body)
            else:
                bits.append(("+ " if c > 0 else "- ") + body)
        return " ".join(bits)

    __repr__ = __str__


def symbol(*entries):
    """The single symbol {e_1,...,e_k}; entries are algebra elements."""
    first = next(e for e in entries if isinstance(e, AlgElem))
    return SymbolSum(first.algebra, len(entries), [(1, tuple(entries))])


def dlog_symbol(s):
    """Sum of wedge products of dlogs; a closed form of degree = arity."""
    A = s.algebra
    out = fm.zero_form(A, s.arity)
    for c, tup in s.terms:
        piece = None
        for u in tup:
            dl = fm.dlog(u)
            piece = dl if piece is None else fm.wedge(piece, dl)
        out = out + Fraction(c) * piece
    return out


@dataclass
class BlochClass:
    algebra: object
    degree: int
    rep: object            # canonical Form representative
    base: list             # discarded sub-tensors with no nilpotent entry
    slot: str = "first"

    def is_zero(self):
        return not self.rep.terms

    def __str__(self):
        verdict = "zero" if self.is_zero() else "nonzero"
        return f"[{fm.form_str(self.rep)}] ({verdict})"


def bloch(s, slot="first"):
    """Bloch image of a symbol sum, canonical in Omega^n/d relative full."""
    A = s.algebra
    n = s.arity - 1
    raw = fm.zero_form(A, n)
    base = []
    for coeff, tup in s.terms:
        splits = [A.unit_split(u) for u in tup]
        for mask in range(1 << s.arity):
            entries = []
            nil_slots = []
            dead = False
            for i in range(s.arity):
                si, xi = splits[i]
                if (mask >> i) & 1:
                    if not xi.terms:
                        dead = True
                        break
                    entries.append(A.one() + xi)
                    nil_slots.append(i)
                else:
                    if si == A.one():
                        dead = True
                        break
                    entries.append(si)
            if dead:
                continue
            if not nil_slots:
                base.append((coeff, tuple(entries)))
                continue
            pick = nil_slots[0] if slot == "first" else nil_slots[-1]
            piece = fm.form_of_element(A.log1p(splits[pick][1]))
            for j, v in enumerate(entries):
                if j == pick:
                    continue
                piece = fm.wedge(piece, fm.dlog(v))
            raw = raw + Fraction(coeff * (-1) ** pick) * piece
    rep = dr.quotient_class(raw, dr.FULL)
    return BlochClass(A, n, rep, base, slot)


def steinberg_element(a, x):
    """zeta(a,x) = (a+x) tensor (1-a-x) minus a tensor (1-a)."""
    A = x.algebra
    if isinstance(a, (int, Fraction)):
        a = A.const(a)
    if not x.is_nilpotent():
        raise ValueError("x must be nilpotent")
    one = A.one()
    if not (A.is_unit(a) and A.is_unit(one - a)):
        raise ValueError("a or 1-a not a unit")
    if not x.terms:
        return SymbolSum(A, 2, [])
    return SymbolSum(A, 2, [(1, (a + x, one - a - x)), (-1, (a, one - a))])


def phi_p(a, b, p):
    """The symbol {1 + a*b*t^p, b}."""
    A = b.algebra
    if isinstance(a, (int, Fraction)):
        a = A.const(a)
    if A.m != 1 or not A.monomial_ideal:
        raise ValueError("phi_p requires single-nilpotent graded mode")
    if A.N <= p:
        raise ValueError("truncation too shallow")
    if not A.is_unit(b):
        raise ValueError("b not a unit")
    u = A.one() + a * b * A.nil() ** p
    return SymbolSum(A, 2, [(1, (u, b))])


def map_symbol(rmap, s):
    """Apply a ring map entrywise."""
    return SymbolSum(rmap.target, s.arity,
                     [(c, tuple(rmap(u) for u in tup)) for c, tup in s.terms])


def swap_symbol(s):
    if s.arity != 2:
        raise ValueError("arity mismatch")
    return SymbolSum(s.algebra, 2, [(c, (v, u)) for c, (u, v) in s.terms])


# -- verifiers -------------------------------------------------------------------


@dataclass
class KeyIdentityReport:
    i: int
    j: int
    passed: bool
    cutoff: int
    bloch_rep: str
    target_rep: str
    certificate: object

    def to_json(self):
        return {"i": self.i, "j": self.j, "passed": self.passed,
                "cutoff": self.cutoff, "bloch_rep": self.bloch_rep,
                "target_rep": self.target_rep,
                "certificate": self.certificate.to_json()}


def key_identity_algebra(i, j):
    return Algebra(1, i + j + 1, params=[("a", False), ("b", False)])


def verify_key_identity(i, j):
    """(i+j)*{1+a t^i, 1+b t^j} against the class of t^(i+j)(ia db - jb da).

    Checked modulo internal degree > i+j; the primitive certificate for the
    difference is returned.
    """
    if i < 1 or j < 1:
        raise ValueError("invalid exponents")
    A = key_identity_algebra(i, j)
    a, b, t = A.var("a"), A.var("b"), A.nil()
    s = symbol(A.one() + a * t ** i, A.one() + b * t ** j)
    cls = bloch(s)
    cut = i + j
    target = Form(A, 1, {
        (((1, 0), (i + j,)), (2,)): Fraction(i),
        (((0, 1), (i + j,)), (1,)): Fraction(-j),
    })
    diff = (i + j) * cls.rep - target
    cert = dr.is_exact(diff, dr.FULL, cutoff=cut)
    target_cls = dr.quotient_class(target, dr.FULL, cutoff=cut)
    return KeyIdentityReport(i, j, cert.exact, cut,
                             fm.form_str(cls.rep), fm.form_str(target_cls), cert)


@dataclass
class FiltrationReport:
    p: int
    i: int
    j: int
    vanishes: bool
    rep: str

    def to_json(self):
        return {"p": self.p, "i": self.i, "j": self.j,
                "vanishes": self.vanishes, "rep": self.rep}


def filtration_algebra(p):
    return Algebra(1, p, params=[("a", False), ("b", False)])


def verify_filtration_vanishing(p, i, j):
    """bloch{1+a t^i, 1+b t^j} = 0 in Q[a,b][t]/t^p whenever i+j >= p."""
    if i < 1 or j < 1:
        raise ValueError("invalid exponents")
    if i + j < p:
        raise ValueError("i+j < p")
    A = filtration_algebra(p)
    a, b, t = A.var("a"), A.var("b"), A.nil()
    s = symbol(A.one() + a * t ** i, A.one() + b * t ** j)
    cls = bloch(s)
    return FiltrationReport(p, i, j, cls.is_zero(), fm.form_str(cls.rep))


def filtration_strictness_witness(p):
    """A pair i+j = p-1 whose Bloch class is certified nonzero in Q[a,b][t]/t^p."""
    if p < 3:
        raise ValueError("no witness below p = 3")
    A = filtration_algebra(p)
    a, b, t = A.var("a"), A.var("b"), A.nil()
    for i in range(1, p - 1):
        j = p - 1 - i
        s = symbol(A.one() + a * t ** i, A.one() + b * t ** j)
        cls = bloch(s)
        if not cls.is_zero():
            cert = dr.is_exact(cls.rep, dr.FULL)
            return {"p": p, "i": i, "j": j, "rep": fm.form_str(cls.rep),
                    "certificate": cert, "symbol": str(s)}
    return None


@dataclass
class SkewReport:
    passed: bool
    rep: str

    def to_json(self):
        return {"passed": self.passed, "rep": self.rep}


def verify_skew(s):
    """bloch(s + swap(s)) = 0 for arity-2 symbol sums."""
    cls = bloch(s + swap_symbol(s))
    return SkewReport(cls.is_zero(), fm.form_str(cls.rep))


@dataclass
class SpanReport:
    degree: int
    dim_target: int
    rank: int
    count: int
    full: bool

    def to_json(self):
        return {"degree": self.degree, "dim_target": self.dim_target,
                "rank": self.rank, "symbols_used": self.count, "full": self.full}


def _default_generators(A, n):
    """Unit tuples (1+w_0, 1+w_1, ...) over nilpotent basis monomials."""
    nil_monos = [e for e in A.nil_basis if sum(e)]
    units = [A.element({((0,) * A.n_params, e): 1}) + A.one() for e in nil_monos]
    tuples = [()]
    for _ in range(n + 1):
        tuples = [tup + (u,) for tup in tuples for u in units]
    return [SymbolSum(A, n + 1, [(1, tup)]) for tup in tuples]


def surjectivity_witnesses(A, rel, n, symbols=None):
    """Check that Bloch images of generator symbols span Omega^n_rel / d."""
    pres = dr.relative(A, rel)
    if symbols is None:
        if A.n_params:
            raise ValueError("parametric mode needs explicit generator symbols")
        symbols = _default_generators(A, n)
    classes = [bloch(s).rep for s in symbols]
    span = RowSpace(order=coord_sort_key(A))
    rank = 0
    for rep in classes:
        if rep.terms and span.insert(dict(rep.terms)) is not None:
            rank += 1
    if A.n_params:
        keys = {block_key(A, *coord) for rep in classes for coord in rep.terms}
        target = 0
        for key in sorted(keys):
            blk = fm.form_block(A, n, key)
            target += blk.dim - pres.class_rows(n, key).rank
    else:
        target = pres.dim(n) - pres.global_class(n).rank
    return SpanReport(n, target, rank, len(symbols), rank == target)


# -- the auxiliary-parameter substitutions ----------------------------------------


def theta_maps(A_with_x, target, q):
    """theta_q: x -> t^q and theta_0: x -> 0, out of the x-augmented algebra."""
    tq = target.nil() ** q
    return (RingMap(A_with_x, target, {"x": tq}),
            RingMap(A_with_x, target, {"x": target.zero()}))


def lambda_map(A, p):
    """t -> t^p on a single-nilpotent algebra."""
    return RingMap(A, A, {A.nil_names[0]: A.nil() ** p})
