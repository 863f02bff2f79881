"""Differential forms over truncated nilpotent algebras.

A degree-n form is stored as a sparse combination of coordinates
(coefficient monomial, wedge word); wedge words are ascending tuples of
generator indices, nilpotent variables first (index i < m means dt_i, index
m+j means d of the j-th parameter). Coordinates are canonical: coefficient
monomials are normal-form basis monomials and every form is reduced against
the d(ideal)-relation rows of its presentation.

With a monomial ideal both the relations and the exterior derivative
preserve the pair (internal degree, parameter multidegree), where dt_i
counts 1 toward internal degree and da_j counts e_j toward the parameter
multidegree. The module exploits this: presentations are built and cached
one block at a time, which keeps parametric algebras finite work. Without a
monomial ideal (parameter-free only) there is a single whole-space block.
"""

from fractions import Fraction
from itertools import combinations

from .linalg import RowSpace
from .algebra import AlgElem, monomials_of_degree

WHOLE = "whole"


def wedge_insert(idx, word):
    """Sign and word for e_idx wedge word; (0, None) when idx repeats."""
    if idx in word:
        return 0, None
    pos = sum(1 for w in word if w < idx)
    out = tuple(sorted(word + (idx,)))
    return (-1) ** pos, out


def merge_words(w1, w2):
    if set(w1) & set(w2):
        return 0, None
    inv = sum(1 for a in w1 for b in w2 if a > b)
    return (-1) ** inv, tuple(sorted(w1 + w2))


def block_key(algebra, mono, word):
    """(internal degree, parameter multidegree) of a coordinate."""
    pexp, texp = mono
    i = sum(texp) + sum(1 for w in word if w < algebra.m)
    pihat = list(pexp)
    for w in word:
        if w >= algebra.m:
            pihat[w - algebra.m] += 1
    return (i, tuple(pihat))


def coord_sort_key(algebra):
    mk = algebra.mono_key
    return lambda coord: (mk(coord[0]), coord[1])


class FormBlock:
    """Presentation of one block of the degree-n form module."""

    def __init__(self, algebra, n, key):
        self.algebra = algebra
        self.n = n
        self.key = key
        self.order = coord_sort_key(algebra)
        self.coords = self._coords()
        self.rows = RowSpace(order=self.order)
        for row in self._relation_rows():
            self.rows.insert(row)
        self.basis = [c for c in sorted(self.coords, key=self.order)
                      if c not in self.rows.rows]

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, vec):
        return self.rows.reduce(vec)

    # -- enumeration ---------------------------------------------------------

    def _pexp_for(self, pihat, dparams):
        pexp = list(pihat)
        for j in dparams:
            pexp[j] -= 1
        for j, e in enumerate(pexp):
            if e < 0 and not self.algebra.params[j].invertible:
                return None
        return tuple(pexp)

    def _words(self, size):
        A = self.algebra
        for k in range(min(size, A.m), -1, -1):
            for T in combinations(range(A.m), k):
                for D in combinations(range(A.n_params), size - k):
                    yield T, D

    def _coords(self):
        A = self.algebra
        out = []
        if self.n < 0:
            return out
        if self.key == WHOLE:
            for T in combinations(range(A.m), self.n):
                for texp in A.nil_basis:
                    out.append((((0,) * A.n_params, texp), T))
            return out
        i, pihat = self.key
        for T, D in self._words(self.n):
            pexp = self._pexp_for(pihat, D)
            if pexp is None:
                continue
            word = T + tuple(A.m + j for j in D)
            for texp in A._basis_by_degree.get(i - len(T), []):
                out.append(((pexp, texp), word))
        return out

    def _form_gens(self):
        A = self.algebra
        gens = []
        if A.monomial_ideal:
            for e in A.mono_gens:
                gens.append({e: Fraction(1)})
        else:
            gens.extend(A.ideal_gens)
        for e in monomials_of_degree(A.m, A.N):
            gens.append({e: Fraction(1)})
        return gens

    def _relation_rows(self):
        if self.n <= 0:
            return
        A = self.algebra
        gens = self._form_gens()
        if self.key == WHOLE:
            pexp = (0,) * A.n_params
            for g in gens:
                for u in A.nil_basis:
                    for W in combinations(range(A.m), self.n - 1):
                        row = {}
                        for a, ca in g.items():
                            for v in range(A.m):
                                if not a[v] or v in W:
                                    continue
                                raw = tuple(x + y for x, y in zip(u, a))
                                raw = raw[:v] + (raw[v] - 1,) + raw[v + 1:]
                                if sum(raw) >= A.N:
                                    continue
                                sign, word = wedge_insert(v, W)
                                nf = A.normal_form({(pexp, raw): ca * a[v] * sign})
                                for mono, c in nf.items():
                                    coord = (mono, word)
                                    val = row.get(coord, 0) + c
                                    if val:
                                        row[coord] = val
                                    else:
                                        row.pop(coord, None)
                        if row:
                            yield row
            return
        i, pihat = self.key
        for g in gens:
            a = next(iter(g))
            dega = sum(a)
            for T, D in self._words(self.n - 1):
                pexp = self._pexp_for(pihat, D)
                if pexp is None:
                    continue
                word = T + tuple(A.m + j for j in D)
                udeg = i - dega - len(T)
                for u in A._basis_by_degree.get(udeg, []):
                    row = {}
                    for v in range(A.m):
                        if not a[v] or v in T:
                            continue
                        mono = tuple(x + y for x, y in zip(u, a))
                        mono = mono[:v] + (mono[v] - 1,) + mono[v + 1:]
                        if A._mono_dead(mono):
                            continue
                        sign, new = wedge_insert(v, word)
                        coord = ((pexp, mono), new)
                        val = row.get(coord, 0) + a[v] * sign
                        if val:
                            row[coord] = Fraction(val)
                        else:
                            row.pop(coord, None)
                    if row:
                        yield row


def form_block(algebra, n, key):
    cache = algebra._form_cache
    if (n, key) not in cache:
        cache[(n, key)] = FormBlock(algebra, n, key)
    return cache[(n, key)]


def canonical_terms(algebra, n, raw):
    """Normal-form coefficients, then reduce blockwise against relations."""
    by_word = {}
    for (mono, word), c in raw.items():
        if c:
            by_word.setdefault(word, {})[mono] = by_word.get(word, {}).get(mono, 0) + c
    flat = {}
    for word, poly in by_word.items():
        nf = algebra.normal_form({k: Fraction(c) for k, c in poly.items() if c})
        for mono, c in nf.items():
            flat[(mono, word)] = c
    if not algebra.monomial_ideal:
        blocks = {}
        for coord, c in flat.items():
            blocks.setdefault(WHOLE, {})[coord] = c
    else:
        blocks = {}
        for coord, c in flat.items():
            blocks.setdefault(block_key(algebra, *coord), {})[coord] = c
    out = {}
    for key, vec in blocks.items():
        red = form_block(algebra, n, key).reduce(vec)
        out.update(red)
    return out


class Form:
    """Canonical differential form of fixed degree."""

    __slots__ = ("algebra", "degree", "terms")

    def __init__(self, algebra, degree, raw_terms, canonical=False):
        self.algebra = algebra
        self.degree = degree
        self.terms = dict(raw_terms) if canonical else canonical_terms(algebra, degree, raw_terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.algebra is other.algebra and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.algebra), self.degree, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        if not isinstance(other, Form) or other.algebra is not self.algebra \
                or other.degree != self.degree:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Form(self.algebra, self.degree, out, canonical=True)

    def __neg__(self):
        return Form(self.algebra, self.degree,
                    {k: -c for k, c in self.terms.items()}, canonical=True)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Form(self.algebra, self.degree, {}, canonical=True)
            return Form(self.algebra, self.degree,
                        {k: c * other for k, c in self.terms.items()}, canonical=True)
        if isinstance(other, AlgElem):
            return scale(other, self)
        return NotImplemented

    __mul__ = __rmul__

    def internal_degrees(self):
        return sorted({block_key(self.algebra, *coord)[0] for coord in self.terms})

    def __str__(self):
        return form_str(self)

    __repr__ = __str__


def zero_form(algebra, n):
    return Form(algebra, n, {}, canonical=True)


def form_of_element(elem):
    return Form(elem.algebra, 0, {(mono, ()): c for mono, c in elem.terms.items()},
                canonical=True)


def d(form):
    """Exterior derivative."""
    A = form.algebra
    raw = {}
    for ((pexp, texp), word), c in form.terms.items():
        for v in range(A.m):
            if texp[v]:
                sign, new = wedge_insert(v, word)
                if not sign:
                    continue
                mono = (pexp, texp[:v] + (texp[v] - 1,) + texp[v + 1:])
                k = (mono, new)
                raw[k] = raw.get(k, 0) + c * texp[v] * sign
        for j in range(A.n_params):
            if pexp[j]:
                sign, new = wedge_insert(A.m + j, word)
                if not sign:
                    continue
                mono = (pexp[:j] + (pexp[j] - 1,) + pexp[j + 1:], texp)
                k = (mono, new)
                raw[k] = raw.get(k, 0) + c * pexp[j] * sign
    return Form(A, form.degree + 1, raw)


def d_elem(elem):
    return d(form_of_element(elem))


def wedge(f, g):
    if f.algebra is not g.algebra:
        raise ValueError("forms over different algebras")
    A = f.algebra
    raw = {}
    for (m1, w1), c1 in f.terms.items():
        for (m2, w2), c2 in g.terms.items():
            sign, word = merge_words(w1, w2)
            if not sign:
                continue
            prod = A.mul_terms({m1: c1}, {m2: c2 * sign})
            for mono, c in prod.items():
                k = (mono, word)
                v = raw.get(k, 0) + c
                if v:
                    raw[k] = v
                else:
                    raw.pop(k, None)
    return Form(A, f.degree + g.degree, raw)


def scale(elem, form):
    A = form.algebra
    raw = {}
    for (mono, word), c in form.terms.items():
        prod = A.mul_terms(elem.terms, {mono: c})
        for mono2, c2 in prod.items():
            k = (mono2, word)
            v = raw.get(k, 0) + c2
            if v:
                raw[k] = v
            else:
                raw.pop(k, None)
    return Form(A, form.degree, raw)


def dlog(u):
    """du/u for a unit u."""
    A = u.algebra
    return scale(A.invert(u), d_elem(u))


def euler_homotopy(form):
    """Contraction with the Euler field t d/dt divided into the dt-slot.

    Only defined in single-nilpotent graded mode, where together with d it
    recovers multiplication by internal degree on each graded piece.
    """
    A = form.algebra
    if A.m != 1 or not A.monomial_ideal:
        raise ValueError("homotopy requires single-nilpotent graded mode")
    raw = {}
    for ((pexp, texp), word), c in form.terms.items():
        if 0 not in word:
            continue
        rest = tuple(w for w in word if w != 0)
        mono = (pexp, (texp[0] + 1,))
        k = (mono, rest)
        raw[k] = raw.get(k, 0) + c
    return Form(A, form.degree - 1, raw)


def graded_component(form, i):
    A = form.algebra
    if not A.monomial_ideal:
        raise ValueError("graded component requires monomial-ideal mode")
    keep = {coord: c for coord, c in form.terms.items()
            if block_key(A, *coord)[0] == i}
    return Form(A, form.degree, keep, canonical=True)


def push_form(rmap, form):
    """Image of a form under a ring map, sending c*dW to map(c)*d(map(W))."""
    src, tgt = rmap.source, rmap.target
    out = zero_form(tgt, form.degree)
    names = src.nil_names + tuple(p.name for p in src.params)
    for (mono, word), c in form.terms.items():
        piece = form_of_element(rmap(AlgElem(src, {mono: c})))
        for w in word:
            name = names[w] if w < src.m else src.params[w - src.m].name
            img = rmap.images.get(name)
            if img is None:
                img = tgt.var(name)
            piece = wedge(piece, d_elem(img))
        out = out + piece
    return out


def form_str(form):
    """Serialize as 'c * mono * dW' terms joined by ' + ', wedges by '∧'."""
    A = form.algebra
    if not form.terms:
        return "0"
    names = list(A.nil_names) + [p.name for p in A.params]
    order = coord_sort_key(A)
    bits = []
    for coord in sorted(form.terms, key=order, reverse=True):
        mono, word = coord
        c = form.terms[coord]
        mstr = A.mono_str(mono) or "1"
        part = f"{abs(c)} * {mstr}"
        if word:
            part += " * " + "∧".join("d" + names[w] for w in word)
        if not bits:
            bits.append(part if c > 0 else "-" + part)
        else:
            bits.append(("+ " if c > 0 else "- ") + part)
    return " ".join(bits)
