from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from nilbloch.linalg import RowSpace, nullspace, vec_add, vec_dot, vec_scale

def clean(v):
    return {k: c for k, c in v.items() if c}


entries = st.fractions(min_value=-4, max_value=4, max_denominator=4)
vectors = st.dictionaries(st.integers(min_value=0, max_value=5), entries,
                          max_size=5).map(clean)


@given(u=vectors, v=vectors)
def test_vec_add_is_componentwise(u, v):
    w = vec_add(u, v)
    keys = set(u) | set(v)
    for k in keys:
        assert w.get(k, 0) == u.get(k, 0) + v.get(k, 0)
    assert all(c for c in w.values())


@given(u=vectors, c=entries)
def test_vec_scale(u, c):
    w = vec_scale(u, c)
    for k in clean(u):
        assert w.get(k, 0) == c * u[k]


@given(vs=st.lists(vectors, max_size=6))
def test_rank_at_most_dimension(vs):
    rows = RowSpace()
    for v in vs:
        rows.insert(v)
    assert rows.rank <= 6
    assert rows.rank <= len([v for v in vs if clean(v)])


@given(vs=st.lists(vectors, max_size=6), w=vectors)
def test_reduce_idempotent(vs, w):
    rows = RowSpace()
    for v in vs:
        rows.insert(v)
    r = rows.reduce(w)
    assert rows.reduce(r) == r


@given(vs=st.lists(vectors, max_size=6))
def test_inserted_vectors_are_contained(vs):
    rows = RowSpace()
    for v in vs:
        rows.insert(v)
    for v in vs:
        assert rows.contains(v)


@given(vs=st.lists(vectors, min_size=1, max_size=5))
def test_solve_reconstructs_combination(vs):
    rows = RowSpace(track=True)
    for i, v in enumerate(vs):
        rows.insert(v, tag=i)
    target = {}
    for v in vs:
        target = vec_add(target, v, Fraction(1))
    combo = rows.solve(target)
    assert combo is not None
    rebuilt = {}
    for tag, c in combo.items():
        rebuilt = vec_add(rebuilt, vs[tag], c)
    assert clean(rebuilt) == clean(target)


def test_solve_fails_outside_span():
    rows = RowSpace(track=True)
    rows.insert({0: Fraction(1), 1: Fraction(2)}, tag="a")
    assert rows.solve({2: Fraction(1)}) is None


def test_witness_separates():
    rows = RowSpace(track=True)
    rows.insert({0: Fraction(1), 1: Fraction(1)}, tag="a")
    v = {0: Fraction(1), 1: Fraction(-1)}
    w = rows.witness(v)
    assert vec_dot(w, v) != 0
    assert vec_dot(w, {0: Fraction(1), 1: Fraction(1)}) == 0


@given(vs=st.lists(vectors, max_size=5))
def test_witness_orthogonal_to_rowspace(vs):
    rows = RowSpace(track=True)
    for i, v in enumerate(vs):
        rows.insert(v, tag=i)
    probe = {0: Fraction(1), 3: Fraction(1, 2)}
    if rows.contains(probe):
        return
    w = rows.witness(probe)
    assert vec_dot(w, probe) != 0
    for v in vs:
        assert vec_dot(w, v) == 0


@given(vs=st.lists(vectors, max_size=6))
def test_nullspace_kills_exactly_the_relations(vs):
    order = None
    kernel = nullspace(vs, order)
    for combo in kernel:
        total = {}
        for idx, c in combo.items():
            total = vec_add(total, vs[idx], c)
        assert clean(total) == {}
    rows = RowSpace()
    for v in vs:
        rows.insert(v)
    assert len(kernel) == len(vs) - rows.rank
