"""Sparse exact row reduction over ordered coordinate keys.

Rows are dicts mapping hashable coordinate keys to Fractions. A RowSpace
keeps an inter-reduced echelon basis of everything inserted into it; the
pivot of a row is its largest key under the supplied order, so reducing a
vector eliminates largest terms first and the reduced representative of a
coset is unique.
"""

from fractions import Fraction


def vec_add(u, v, c=Fraction(1)):
    # u + c*v, dropping zeros
    out = dict(u)
    for k, a in v.items():
        b = out.get(k, 0) + c * a
        if b:
            out[k] = b
        else:
            out.pop(k, None)
    return out


def vec_scale(u, c):
    if not c:
        return {}
    return {k: c * a for k, a in u.items()}


def vec_dot(u, v):
    if len(v) < len(u):
        u, v = v, u
    return sum((a * v[k] for k, a in u.items() if k in v), Fraction(0))


class RowSpace:
    """Inter-reduced row span with largest-key pivots.

    order(key) must return something totally ordered; ties are not allowed
    between distinct keys of the same space.
    """

    def __init__(self, order=None, track=False):
        self.order = order or (lambda k: k)
        self.rows = {}      # pivot key -> monic row, fully reduced
        self.track = track
        self.combos = {}    # pivot key -> {tag: Fraction}

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, vec, want_combo=False):
        res = {k: c for k, c in vec.items() if c}
        combo = {}
        hits = [k for k in res if k in self.rows]
        # row tails never contain pivot keys, so one descending pass suffices
        hits.sort(key=self.order, reverse=True)
        for k in hits:
            c = res.get(k)
            if not c:
                continue
            res = vec_add(res, self.rows[k], -c)
            if want_combo and self.track:
                combo = vec_add(combo, self.combos[k], c)
        return res, combo

    def reduce(self, vec):
        """Canonical representative of vec modulo the row span."""
        res, _ = self._reduce(vec)
        return res

    def contains(self, vec):
        return not self.reduce(vec)

    def insert(self, vec, tag=None):
        """Add vec to the span; returns the new pivot key or None if dependent."""
        res, combo = self._reduce(vec, want_combo=True)
        if not res:
            return None
        piv = max(res, key=self.order)
        lead = Fraction(res[piv])
        row = vec_scale(res, Fraction(1) / lead)
        if self.track:
            cmb = vec_scale(combo, Fraction(-1) / lead)
            if tag is not None:
                cmb = vec_add(cmb, {tag: Fraction(1) / lead})
            self.combos[piv] = cmb
        # keep the basis in reduced echelon form
        for p, other in self.rows.items():
            c = other.get(piv)
            if c:
                self.rows[p] = vec_add(other, row, -c)
                if self.track:
                    self.combos[p] = vec_add(self.combos[p], self.combos[piv], -c)
        self.rows[piv] = row
        return piv

    def solve(self, vec):
        """Tags combination with vec = sum(c[tag] * inserted[tag]), or None.

        Only meaningful when track=True and every insert carried a tag.
        """
        res, combo = self._reduce(vec, want_combo=True)
        if res:
            return None
        return combo

    def witness(self, vec):
        """Linear functional (as a sparse dict) vanishing on the span but not on vec.

        Returns None when vec lies in the span. Pair it with vec_dot.
        """
        res = self.reduce(vec)
        if not res:
            return None
        kappa = max(res, key=self.order)
        w = {kappa: Fraction(1)}
        for p, row in self.rows.items():
            c = row.get(kappa)
            if c:
                w[p] = -c
        return w


def nullspace(vectors, order=None):
    """Basis of the kernel of the 'stack these rows' map.

    vectors is a list of sparse dicts (images of the domain basis e_0..e_k);
    returns sparse dicts over domain indices spanning the relations among them.
    """
    span = RowSpace(order=order, track=True)
    kernel = []
    for idx, v in enumerate(vectors):
        combo = span.solve(v)
        if combo is None:
            span.insert(v, tag=idx)
        else:
            kernel.append(vec_add({idx: Fraction(1)}, vec_scale(combo, -1)))
    return kernel
