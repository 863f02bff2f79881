"""Truncated nilpotent polynomial algebras over the rationals.

An algebra here is R = S[t_1..t_m]/J where S = Q[a_1..a_P] (some parameters
optionally inverted) and J is an ideal in the nilpotent variables containing
every monomial of degree N. Elements carry exact Fraction coefficients and
are kept in normal form: in monomial-ideal mode a term survives iff its
nilpotent part is not divisible by a generator and has degree < N, otherwise
terms are rewritten against a row-reduced presentation of the ideal.

Monomials are pairs (pexp, texp) of integer exponent tuples; parameter
exponents may be negative only on parameters declared invertible.
"""

from dataclasses import dataclass
from fractions import Fraction

from .linalg import RowSpace

_RESERVED = {"exp", "log"}


def compositions(total, parts):
    """All tuples of `parts` nonnegative ints summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def monomials_of_degree(m, d):
    return list(compositions(d, m))

def monomials_below(m, N):
    out = []
    for d in range(N):
        out.extend(compositions(d, m))
    return out


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class ParamSpec:
    name: str
    invertible: bool = False


def _add_terms(u, v, c=Fraction(1)):
    out = dict(u)
    for k, a in v.items():
        b = out.get(k, 0) + c * a
        if b:
            out[k] = b
        else:
            out.pop(k, None)
    return out


class AlgElem:
    """Element of a truncated algebra, always held in normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, AlgElem):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.algebra, _add_terms(self.terms, o.terms))

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.algebra, _add_terms(self.terms, o.terms, Fraction(-1)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.algebra.zero()
            return AlgElem(self.algebra, {k: c * other for k, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.algebra, self.algebra.mul_terms(self.terms, o.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * self.algebra.invert(o)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.algebra.invert(self) ** (-n)
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.const(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def augmentation(self):
        """The image in S, i.e. the terms with trivial nilpotent part."""
        zero_t = (0,) * self.algebra.m
        return AlgElem(self.algebra,
                       {k: c for k, c in self.terms.items() if k[1] == zero_t})

    def nil_part(self):
        return self - self.augmentation()

    def is_nilpotent(self):
        return not self.augmentation().terms

    def is_unit(self):
        return self.algebra.is_unit(self)

    def constant(self):
        """The rational value of a constant element."""
        zero = ((0,) * self.algebra.n_params, (0,) * self.algebra.m)
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {zero}:
            raise ValueError("element is not a rational constant")
        return self.terms[zero]

    def __str__(self):
        return self.algebra.elem_str(self)

    __repr__ = __str__


class Algebra:
    """R = S[t_1..t_m]/J with S = Q[params] and (t_1..t_m)^N contained in J.

    ideal lists extra generators (dicts {texp: coeff} or AlgElem-like term
    dicts) in the nilpotent variables; the degree-N power of the nilpotent
    ideal is adjoined automatically unless add_bound_power=False, in which
    case the given generators must already contain it.
    """

    def __init__(self, nilpotents, bound, ideal=(), params=(), add_bound_power=True):
        if nilpotents < 1:
            raise ValueError("need at least one nilpotent variable")
        if bound < 1:
            raise ValueError("nilpotency bound must be at least 1")
        self.m = nilpotents
        self.N = bound
        self.params = tuple(ParamSpec(p.name, p.invertible) if isinstance(p, ParamSpec)
                            else ParamSpec(*p) if isinstance(p, tuple) else ParamSpec(p)
                            for p in params)
        self.n_params = len(self.params)
        self.nil_names = ("t",) if self.m == 1 else tuple(f"t{i+1}" for i in range(self.m))
        self._check_names()
        self.param_index = {p.name: i for i, p in enumerate(self.params)}
        self.nil_index = {n: i for i, n in enumerate(self.nil_names)}

        gens = [self._gen_terms(g) for g in ideal]
        for g in gens:
            for texp in g:
                if sum(texp) == 0:
                    raise ValueError("degree-zero ideal generators are not supported")
        self.monomial_ideal = all(len(g) == 1 for g in gens)
        if self.n_params and not self.monomial_ideal:
            raise ValueError("parametric mode requires monomial ideal")

        if self.monomial_ideal:
            exps = [next(iter(g)) for g in gens]
            exps = [e for e in exps if sum(e) < self.N]
            # minimal generating set; degree >= N handled by the bound itself
            self.mono_gens = tuple(sorted(
                e for e in set(exps)
                if not any(f != e and _divides(f, e) for f in set(exps))))
            if not add_bound_power:
                for mono in monomials_of_degree(self.m, self.N):
                    if not any(_divides(e, mono) for e in self.mono_gens):
                        raise ValueError("degree-N monomials do not all vanish")
            self._ring_rows = None
            self.nil_basis = tuple(e for e in monomials_below(self.m, self.N)
                                   if not self._mono_dead(e))
        else:
            self.mono_gens = ()
            order = lambda e: (sum(e), e)
            rows = RowSpace(order=order)
            for g in gens:
                for u in monomials_below(self.m, self.N):
                    row = {}
                    for e, c in g.items():
                        s = tuple(x + y for x, y in zip(u, e))
                        if sum(s) < self.N:
                            row = _add_terms(row, {s: c})
                    if row:
                        rows.insert(row)
            if not add_bound_power:
                wide = RowSpace(order=order)
                for g in gens:
                    for u in monomials_below(self.m, self.N + 1):
                        row = {}
                        for e, c in g.items():
                            s = tuple(x + y for x, y in zip(u, e))
                            if sum(s) <= self.N:
                                row = _add_terms(row, {s: c})
                        if row:
                            wide.insert(row)
                for mono in monomials_of_degree(self.m, self.N):
                    if not wide.contains({mono: Fraction(1)}):
                        raise ValueError("degree-N monomials do not all vanish")
            self._ring_rows = rows
            self.nil_basis = tuple(e for e in monomials_below(self.m, self.N)
                                   if e not in rows.rows)
        self.ideal_gens = tuple(dict(g) for g in gens)
        self._basis_by_degree = {}
        for e in self.nil_basis:
            self._basis_by_degree.setdefault(sum(e), []).append(e)
        self._form_cache = {}

    # -- construction helpers -------------------------------------------------

    def _check_names(self):
        seen = set(self.nil_names)
        for p in self.params:
            name = p.name
            if not name.isidentifier() or name in _RESERVED:
                raise ValueError(f"bad parameter name {name!r}")
            if name.startswith("d"):
                raise ValueError("parameter names must not begin with 'd'")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            seen.add(name)

    def _gen_terms(self, g):
        if isinstance(g, AlgElem):
            out = {}
            for (pexp, texp), c in g.terms.items():
                if any(pexp):
                    raise ValueError("ideal generators must not involve parameters")
                out[texp] = out.get(texp, 0) + c
            return {k: Fraction(c) for k, c in out.items() if c}
        return {tuple(k): Fraction(c) for k, c in dict(g).items() if c}

    def _mono_dead(self, texp):
        if sum(texp) >= self.N:
            return True
        return any(_divides(e, texp) for e in self.mono_gens)

    # -- normal forms ----------------------------------------------------------

    def mono_key(self, mono):
        """Sort key; graded-lex on nilpotent exponents, then lex on parameters."""
        pexp, texp = mono
        return (sum(texp), texp, pexp)

    def normal_form(self, terms):
        for (pexp, texp) in terms:
            for i, e in enumerate(pexp):
                if e < 0 and not self.params[i].invertible:
                    raise ValueError(
                        f"negative exponent on non-invertible parameter {self.params[i].name!r}")
        if self.monomial_ideal:
            return {k: c for k, c in terms.items()
                    if c and not self._mono_dead(k[1])}
        out = {}
        by_p = {}
        for (pexp, texp), c in terms.items():
            by_p.setdefault(pexp, {})[texp] = by_p.get(pexp, {}).get(texp, 0) + c
        for pexp, vec in by_p.items():
            vec = {k: Fraction(c) for k, c in vec.items() if c and sum(k) < self.N}
            red = self._ring_rows.reduce(vec)
            for texp, c in red.items():
                if c:
                    out[(pexp, texp)] = c
        return out

    def element(self, terms):
        clean = {}
        for k, c in terms.items():
            c = Fraction(c)
            if c:
                pexp, texp = k
                clean[(tuple(pexp), tuple(texp))] = clean.get((tuple(pexp), tuple(texp)), 0) + c
        return AlgElem(self, self.normal_form({k: c for k, c in clean.items() if c}))

    def mul_terms(self, u, v):
        out = {}
        for (p1, t1), c1 in u.items():
            for (p2, t2), c2 in v.items():
                if sum(t1) + sum(t2) >= self.N:
                    continue
                k = (tuple(a + b for a, b in zip(p1, p2)),
                     tuple(a + b for a, b in zip(t1, t2)))
                c = out.get(k, 0) + c1 * c2
                if c:
                    out[k] = c
                else:
                    out.pop(k, None)
        return self.normal_form(out)

    # -- element constructors ----------------------------------------------------

    def zero(self):
        return AlgElem(self, {})

    def const(self, c):
        c = Fraction(c)
        if not c:
            return self.zero()
        return AlgElem(self, {((0,) * self.n_params, (0,) * self.m): c})

    def one(self):
        return self.const(1)

    def var(self, name):
        if name in self.nil_index:
            texp = tuple(1 if i == self.nil_index[name] else 0 for i in range(self.m))
            return self.element({((0,) * self.n_params, texp): 1})
        if name in self.param_index:
            pexp = tuple(1 if i == self.param_index[name] else 0 for i in range(self.n_params))
            return self.element({(pexp, (0,) * self.m): 1})
        raise ValueError(f"unknown variable {name!r}")

    def nil(self, i=0):
        return self.var(self.nil_names[i])

    def gens(self):
        return [self.var(n) for n in self.nil_names]

    # -- units and series ---------------------------------------------------------

    def is_unit(self, u):
        aug = u.augmentation().terms
        if len(aug) != 1:
            return False
        (pexp, _), c = next(iter(aug.items()))
        if not c:
            return False
        return all(e == 0 or self.params[i].invertible for i, e in enumerate(pexp))

    def unit_split(self, u):
        """u = s*(1+x) with s a unit of S and x nilpotent; returns (s, x)."""
        if not self.is_unit(u):
            raise ValueError("not a unit")
        (pexp, texp), c = next(iter(u.augmentation().terms.items()))
        s = AlgElem(self, {(pexp, texp): c})
        s_inv = AlgElem(self, {(tuple(-e for e in pexp), texp): Fraction(1) / c})
        x = u * s_inv - self.one()
        return s, x

    def invert(self, u):
        s, x = self.unit_split(u)
        (pexp, texp), c = next(iter(s.terms.items()))
        s_inv = AlgElem(self, {(tuple(-e for e in pexp), texp): Fraction(1) / c})
        out = self.one()
        p = x
        sign = -1
        while p.terms:
            out = out + p * sign
            p = p * x
            sign = -sign
        return s_inv * out

    def log1p(self, x):
        """log(1+x) for nilpotent x, by the truncating alternating series."""
        if not x.is_nilpotent():
            raise ValueError("log1p requires a nilpotent argument")
        out = self.zero()
        p = x
        k = 1
        while p.terms:
            out = out + p * Fraction((-1) ** (k + 1), k)
            p = p * x
            k += 1
        return out

    def exp_nil(self, y):
        """exp(y) = sum y^k / k! for nilpotent y."""
        if not y.is_nilpotent():
            raise ValueError("exp_nil requires a nilpotent argument")
        out = self.one()
        term = self.one()
        k = 1
        while True:
            term = term * y * Fraction(1, k)
            if not term.terms:
                return out
            out = out + term
            k += 1

    # -- substitution -----------------------------------------------------------

    def substitute(self, elem, images, target):
        """Apply the ring map sending each named variable to images[name].

        Unmapped variables go to the same-named variable of the target.
        Nilpotent variables must land on nilpotents and invertible parameters
        on units.
        """
        imgs = {}
        for name in self.nil_names + tuple(p.name for p in self.params):
            if name in images:
                img = images[name]
                if not isinstance(img, AlgElem) or img.algebra is not target:
                    raise ValueError(f"image of {name!r} is not an element of the target")
            else:
                img = target.var(name)
            imgs[name] = img
        for name in self.nil_names:
            if not imgs[name].is_nilpotent():
                raise ValueError("substitution violates nilpotency or unit constraints")
        for p in self.params:
            if p.invertible and not target.is_unit(imgs[p.name]):
                raise ValueError("substitution violates nilpotency or unit constraints")
        cache = {}

        def power(name, e):
            key = (name, e)
            if key not in cache:
                cache[key] = imgs[name] ** e
            return cache[key]

        out = target.zero()
        for (pexp, texp), c in elem.terms.items():
            piece = target.const(c)
            for i, e in enumerate(texp):
                if e:
                    piece = piece * power(self.nil_names[i], e)
            for i, e in enumerate(pexp):
                if e:
                    piece = piece * power(self.params[i].name, e)
            out = out + piece
        return out

    # -- printing -----------------------------------------------------------------

    def mono_str(self, mono):
        pexp, texp = mono
        parts = []
        for i, e in enumerate(pexp):
            if e == 1:
                parts.append(self.params[i].name)
            elif e:
                parts.append(f"{self.params[i].name}^{e}")
        for i, e in enumerate(texp):
            if e == 1:
                parts.append(self.nil_names[i])
            elif e:
                parts.append(f"{self.nil_names[i]}^{e}")
        return "*".join(parts)

    def elem_str(self, elem):
        if not elem.terms:
            return "0"
        keys = sorted(elem.terms, key=self.mono_key, reverse=True)
        out = []
        for k in keys:
            c = elem.terms[k]
            mono = self.mono_str(k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+" if c > 0 else "-") + body)
        return "".join(out)

    def describe(self):
        return {
            "nilpotents": self.m,
            "bound": self.N,
            "ideal": [self.elem_str(AlgElem(self, {(((0,) * self.n_params), k): c
                                                   for k, c in g.items()}))
                      for g in self.ideal_gens],
            "params": [{"name": p.name, "invertible": p.invertible} for p in self.params],
        }


@dataclass
class RingMap:
    """Named-variable substitution map between algebras."""
    source: "Algebra"
    target: "Algebra"
    images: dict

    def __call__(self, elem):
        return self.source.substitute(elem, self.images, self.target)


def power_algebra(m, N, params=()):
    """The plain truncation S[t_1..t_m]/(t_1..t_m)^N."""
    return Algebra(m, N, ideal=(), params=params)
