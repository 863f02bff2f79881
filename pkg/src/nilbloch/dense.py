"""Dense whole-space reference solver.

Everything in this module works on raw coordinate vectors over the full
monomial basis of Q[t_1..t_m] below the truncation bound, with no grading,
no normal forms and no sparsity tricks.  It exists as an independent route
to the same dimensions and exactness verdicts that the blocked sparse
engine computes, and as the oracle that pins regression constants before
they are frozen into tests.

Only parameter-free algebras are supported here; the coefficient field is
Q throughout.  Polynomials are dicts {exponent tuple: Fraction}.
"""

import itertools
from fractions import Fraction


def monomials_below(m, N):
    """All exponent tuples of length m with total degree < N, in a fixed order."""
    out = []
    for total in range(N):
        for combo in itertools.combinations_with_replacement(range(m), total):
            exps = [0] * m
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    return out


def monomials_of_degree(m, d):
    return [e for e in monomials_below(m, d + 1) if sum(e) == d]


def poly_mul(p, q):
    out = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e, Fraction(0)) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def poly_truncate(p, N):
    return {e: c for e, c in p.items() if sum(e) < N}


def poly_diff(p, i):
    out = {}
    for e, c in p.items():
        if e[i] > 0:
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[e2] = out.get(e2, Fraction(0)) + c * e[i]
    return {e: c for e, c in out.items() if c}


def _eliminate(rows, ncols):
    """Plain Gaussian elimination, pivoting left to right in column order.

    Mutates nothing; returns (rank, echelon rows as lists).
    """
    work = [list(r) for r in rows if any(r)]
    echelon = []
    col = 0
    while work and col < ncols:
        pivot_row = None
        for r in work:
            if r[col]:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        work.remove(pivot_row)
        inv = Fraction(1) / pivot_row[col]
        pivot_row = [x * inv for x in pivot_row]
        for r in work:
            if r[col]:
                f = r[col]
                for k in range(col, ncols):
                    r[k] -= f * pivot_row[k]
        work = [r for r in work if any(r)]
        echelon.append(pivot_row)
        col += 1
    return len(echelon), echelon


def _rank(rows, ncols):
    return _eliminate(rows, ncols)[0]


def _in_span(vec, rows, ncols):
    r0 = _rank(rows, ncols)
    r1 = _rank(rows + [list(vec)], ncols)
    return r1 == r0


class DenseModel:
    """Raw presentation of the de Rham complex of Q[t_1..t_m]/(gens + m^N).

    Coordinates of the degree-n space are pairs (monomial of degree < N,
    n-element subset of {dt_1..dt_m}); the actual module is the quotient of
    that free space by the span of the relation rows.
    """

    def __init__(self, m, N, gens):
        self.m = m
        self.N = N
        self.gens = [dict(g) for g in gens]
        self.monos = monomials_below(m, N)
        self.mono_index = {e: i for i, e in enumerate(self.monos)}
        cutoff = [{e: Fraction(1)} for e in monomials_of_degree(m, N)]
        self.all_gens = self.gens + cutoff
        self._coords = {}
        self._rel_rows = {}

    def coords(self, n):
        if n not in self._coords:
            wedges = list(itertools.combinations(range(self.m), n))
            self._coords[n] = [(i, w) for i in range(len(self.monos)) for w in wedges]
        return self._coords[n]

    def coord_index(self, n):
        return {c: i for i, c in enumerate(self.coords(n))}

    def _insert_sign(self, i, wedge):
        # sign of sorting dt_i into an increasing wedge word, None if repeated
        if i in wedge:
            return None, None
        pos = sum(1 for j in wedge if j < i)
        new = tuple(sorted(wedge + (i,)))
        return (-1) ** pos, new

    def _vec(self, n, terms):
        idx = self.coord_index(n)
        row = [Fraction(0)] * len(self.coords(n))
        for (e, w), c in terms.items():
            if sum(e) < self.N and c:
                row[idx[(self.mono_index[e], w)]] += c
        return row

    def relation_rows(self, n, extra_gens=()):
        """Rows spanning (J*F + dJ^F') inside the free degree-n space."""
        key = (n, tuple(sorted(str(sorted(g.items())) for g in extra_gens)))
        if key in self._rel_rows:
            return self._rel_rows[key]
        gens = self.all_gens + [dict(g) for g in extra_gens]
        rows = []
        wedges = list(itertools.combinations(range(self.m), n))
        sub_wedges = list(itertools.combinations(range(self.m), n - 1)) if n else []
        for g in gens:
            for u in self.monos:
                prod = poly_truncate(poly_mul({u: Fraction(1)}, g), self.N)
                if prod:
                    for w in wedges:
                        rows.append(self._vec(n, {(e, w): c for e, c in prod.items()}))
                if n == 0:
                    continue
                for wp in sub_wedges:
                    terms = {}
                    for i in range(self.m):
                        dgi = poly_diff(g, i)
                        if not dgi:
                            continue
                        sign, w = self._insert_sign(i, wp)
                        if sign is None:
                            continue
                        part = poly_truncate(poly_mul({u: Fraction(1)}, dgi), self.N)
                        for e, c in part.items():
                            terms[(e, w)] = terms.get((e, w), Fraction(0)) + sign * c
                    if any(terms.values()):
                        rows.append(self._vec(n, terms))
        rows = [r for r in rows if any(r)]
        self._rel_rows[key] = rows
        return rows

    def d_row(self, n, coord):
        """Coordinates of d applied to one degree-n basis coordinate."""
        mono_i, wedge = coord
        e = self.monos[mono_i]
        terms = {}
        for i in range(self.m):
            if e[i] == 0:
                continue
            sign, w = self._insert_sign(i, wedge)
            if sign is None:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            terms[(e2, w)] = terms.get((e2, w), Fraction(0)) + sign * e[i]
        return self._vec(n + 1, terms)

    def relative_rows(self, n, rel_gens):
        """Rows spanning Ker(Omega^n_R -> Omega^n_{R/I'}) in the free space.

        rel_gens is None for the full augmentation ideal, else a list of
        generator polys of the sub-ideal I'.
        """
        if rel_gens is None:
            rows = []
            idx = self.coord_index(n)
            for (mono_i, w) in self.coords(n):
                if n >= 1 or sum(self.monos[mono_i]) >= 1:
                    row = [Fraction(0)] * len(self.coords(n))
                    row[idx[(mono_i, w)]] = Fraction(1)
                    rows.append(row)
            return rows + self.relation_rows(n)
        return self.relation_rows(n, extra_gens=rel_gens)

    def quotient_dims(self, n, rel_gens):
        """dim of the relative degree-n space and of its image under d."""
        ncols = len(self.coords(n))
        u = self.relation_rows(n)
        w = self.relative_rows(n, rel_gens)
        dim_rel = _rank(w, ncols) - _rank(u, ncols)
        _, w_ech = _eliminate(w, ncols)
        d_rows = []
        idx = self.coord_index(n)
        for row in w_ech:
            terms = {}
            for (mono_i, wg), pos in idx.items():
                if row[pos]:
                    dvec = self.d_row(n, (mono_i, wg))
                    for k, v in enumerate(dvec):
                        if v:
                            terms[k] = terms.get(k, Fraction(0)) + row[pos] * v
            d_rows.append([terms.get(k, Fraction(0))
                           for k in range(len(self.coords(n + 1)))])
        u_next = self.relation_rows(n + 1)
        r_next = _rank(u_next + d_rows, len(self.coords(n + 1))) - _rank(
            u_next, len(self.coords(n + 1)))
        return dim_rel, r_next, d_rows

    def cohomology(self, rel_gens, n_max=None):
        """[(n, dim_rel, dim_ker, dim_im, dim_h)] for the relative complex."""
        if n_max is None:
            n_max = self.m
        report = []
        prev_rank = 0
        for n in range(n_max + 1):
            dim_rel, r_next, _ = self.quotient_dims(n, rel_gens)
            dim_ker = dim_rel - r_next
            report.append((n, dim_rel, dim_ker, prev_rank, dim_ker - prev_rank))
            prev_rank = r_next
        return report

    def classes_dim(self, n, rel_gens):
        """dim of Omega^n_rel / d Omega^{n-1}_rel."""
        dim_rel, _, _ = self.quotient_dims(n, rel_gens)
        if n == 0:
            return dim_rel
        _, r_prev, _ = self.quotient_dims(n - 1, rel_gens)
        return dim_rel - r_prev

    def is_exact(self, n, terms, rel_gens):
        """Whether the degree-n form given by raw terms is d of a relative form."""
        vec = self._vec(n, terms)
        ncols = len(self.coords(n))
        _, _, d_rows = self.quotient_dims(n - 1, rel_gens) if n else (0, 0, [])
        rows = self.relation_rows(n) + d_rows
        return _in_span(vec, rows, ncols)


def quotient_dimension(m, N, gens):
    """dim_Q of Q[t_1..t_m]/(gens + m^N), by raw row reduction."""
    model = DenseModel(m, N, gens)
    return len(model.monos) - _rank(model.relation_rows(0), len(model.monos))


def stabilized_quotient(gens_of, m, start_N, N_max):
    """Increase the truncation until all monomials of some degree d < N lie in
    the ideal span; that certifies the dimension of the power-series quotient.

    gens_of(N) must return the generator list to use at truncation N.
    Returns (dim, N_used, stabilization_degree) or None if not reached.
    """
    for N in range(start_N, N_max + 1):
        model = DenseModel(m, N, gens_of(N))
        rows = model.relation_rows(0)
        ncols = len(model.monos)
        _, ech = _eliminate(rows, ncols)
        for d in range(1, N):
            degree_monos = monomials_of_degree(m, d)
            ok = True
            for e in degree_monos:
                vec = [Fraction(0)] * ncols
                vec[model.mono_index[e]] = Fraction(1)
                if not _in_span(vec, ech, ncols):
                    ok = False
                    break
            if ok:
                dim = ncols - len(ech)
                return dim, N, d
    return None


def milnor_number(f, m, N_max=24):
    """(mu, N_used, stabilization degree) for an isolated singularity at 0."""
    partials = [poly_diff(f, i) for i in range(m)]
    start = max(max((sum(e) for e in f), default=0) + 2, 4)
    result = stabilized_quotient(lambda N: partials, m, start, N_max)
    if result is None:
        raise ValueError("isolated singularity not detected up to N_max")
    return result


def tyurina_number(f, m, N_max=24):
    partials = [poly_diff(f, i) for i in range(m)]
    start = max(max((sum(e) for e in f), default=0) + 2, 4)
    result = stabilized_quotient(lambda N: partials + [f], m, start, N_max)
    if result is None:
        raise ValueError("isolated singularity not detected up to N_max")
    return result[0], result[1]
